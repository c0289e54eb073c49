"""Signed product of a hypergraph with a template, and the regularization built on it.

Product vertex (u, t) with u a vertex of G and t = (part, index) of T lives in
part ``t.part`` at index ``u * |T_part| + t.index``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Sequence, Union

from .hypergraph import Hypergraph, KPartiteHypergraph, VertexRef, is_clique
from .templates import DEFAULT_TEMPLATE_BUDGET, SignedHypergraph, build_template

DEFAULT_PRODUCT_BUDGET = 10 ** 8


class ProductTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ProductVertexMap:
    n_g: int  # |V(G)|
    part_sizes: tuple  # part sizes of T

    def forward(self, u: int, t) -> VertexRef:
        p, i = t
        if not (0 <= u < self.n_g and 0 <= i < self.part_sizes[p]):
            raise ValueError(f"({u}, {t}) is not a vertex of V(G) x V(T)")
        return VertexRef(p, u * self.part_sizes[p] + i)

    def backward(self, v) -> tuple:
        p, i = v
        u, ti = divmod(i, self.part_sizes[p])
        if not 0 <= u < self.n_g:
            raise ValueError(f"{v} is not a product vertex")
        return u, VertexRef(p, ti)

    def product_part_sizes(self) -> tuple:
        return tuple(self.n_g * n for n in self.part_sizes)


def _as_flat(G: Union[Hypergraph, KPartiteHypergraph]) -> Hypergraph:
    return Hypergraph.flatten(G) if isinstance(G, KPartiteHypergraph) else G


def predicted_product_edges(G: Hypergraph, T: SignedHypergraph) -> int:
    n_neg = len(T.negative)
    n_pos = len(T.base.edges) - n_neg
    ordered_edges = factorial(G.h) * len(G.edges)
    return n_pos * ordered_edges + n_neg * (G.n_vertices ** G.h - ordered_edges)


def signed_product(
    G: Union[Hypergraph, KPartiteHypergraph], T: SignedHypergraph, budget: int = DEFAULT_PRODUCT_BUDGET
) -> tuple:
    """Return ``(G', map)``.

    A positive T-edge (t_1..t_h) pairs with every ordered G-edge (u_1..u_h); a
    negative one with every h-tuple over V(G), repeats allowed, that is not an
    edge of G.  A k-partite G is used as a flat vertex set.
    """
    G = _as_flat(G)
    if G.h != T.h:
        raise ValueError(f"uniformity mismatch: G is {G.h}-uniform, T is {T.h}-uniform")
    predicted = predicted_product_edges(G, T)
    if predicted > budget:
        raise ProductTooLarge(f"signed product would have {predicted} edges (budget {budget})")
    vmap = ProductVertexMap(G.n_vertices, T.base.part_sizes)
    h = G.h
    ordered_edges = [p for e in sorted(G.edges) for p in itertools.permutations(e)]
    ordered_set = set(ordered_edges)
    non_edges = [u for u in itertools.product(range(G.n_vertices), repeat=h) if u not in ordered_set]
    sizes = T.base.part_sizes
    edges = []
    for t in T.base.edges:
        pool = non_edges if t in T.negative else ordered_edges
        for u in pool:
            edges.append(tuple(VertexRef(tv.part, uu * sizes[tv.part] + tv.index) for uu, tv in zip(u, t)))
    product = KPartiteHypergraph(T.k, h, vmap.product_part_sizes(), tuple(edges))
    return product, vmap


def regularize(
    G: Union[Hypergraph, KPartiteHypergraph],
    h: int,
    k: int,
    template_budget: int = DEFAULT_TEMPLATE_BUDGET,
    product_budget: int = DEFAULT_PRODUCT_BUDGET,
) -> tuple:
    """Signed product of G with T(h, k): a regular k-partite hypergraph with a
    k-clique iff G has one."""
    G = _as_flat(G)
    if G.h != h:
        raise ValueError(f"G is {G.h}-uniform, expected {h}")
    T = build_template(h, k, budget=template_budget)
    return signed_product(G, T, budget=product_budget)


def project_clique(product: KPartiteHypergraph, vmap: ProductVertexMap, clique: Sequence) -> tuple:
    """Split a k-clique of G' into its G-vertices and T-vertices (both in part order)."""
    verts = sorted(VertexRef(*v) for v in clique)
    if len(verts) != product.k or not is_clique(product, verts):
        raise ValueError("input is not a k-clique of the product")
    pairs = [vmap.backward(v) for v in verts]
    g_side = tuple(u for u, _ in pairs)
    t_side = tuple(t for _, t in pairs)
    if len(set(g_side)) != len(g_side):
        raise AssertionError("G-components of a product clique repeat a vertex")
    return g_side, t_side


def lift_clique(vmap: ProductVertexMap, g_clique: Sequence[int], t_clique: Sequence, perm: Sequence[int]) -> tuple:
    """Vertices (u_{perm[i]}, t_i) for i in part order of the T-clique."""
    t_sorted = sorted(VertexRef(*t) for t in t_clique)
    return tuple(vmap.forward(g_clique[perm[i]], t) for i, t in enumerate(t_sorted))
