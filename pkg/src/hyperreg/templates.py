"""Signed hypergraphs and the group-sum template T(h, k).

Every part of T(h, k) is a copy of the group (Z/hZ)^D with D = C(k, h), whose
coordinates are indexed by the h-subsets of the parts in lexicographic order.
A group element is stored as the integer ``sum(coords[d] * h**d)`` (first
dimension least significant); that integer is the vertex index in every part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Optional

from .hypergraph import (
    KPartiteHypergraph,
    VertexRef,
    iter_cliques,
    make_edge,
    regularity,
    validate,
)

DEFAULT_TEMPLATE_BUDGET = 2_000_000


class TemplateTooLarge(ValueError):
    pass


class TemplateError(ValueError):
    """A clique of the template violated a structural guarantee."""


def dimensions(h: int, k: int) -> list:
    return list(itertools.combinations(range(k), h))


@dataclass(frozen=True)
class GroupElement:
    h: int
    coords: tuple

    @classmethod
    def zero(cls, h: int, k: int) -> "GroupElement":
        return cls(h, (0,) * comb(k, h))

    @classmethod
    def unit(cls, h: int, k: int, S) -> "GroupElement":
        dims = dimensions(h, k)
        S = tuple(sorted(S))
        return cls(h, tuple(int(d == S) for d in dims))

    @classmethod
    def decode(cls, h: int, k: int, index: int) -> "GroupElement":
        coords = []
        for _ in range(comb(k, h)):
            index, r = divmod(index, h)
            coords.append(r)
        return cls(h, tuple(coords))

    def encode(self) -> int:
        out = 0
        for c in reversed(self.coords):
            out = out * self.h + c
        return out

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.h, tuple((a + b) % self.h for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.h, tuple((-a) % self.h for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)


@dataclass(frozen=True)
class SignedHypergraph:
    base: KPartiteHypergraph
    negative: frozenset = frozenset()

    def sign(self, edge) -> int:
        return -1 if edge in self.negative else 1

    @cached_property
    def positive_part(self) -> KPartiteHypergraph:
        return self.base.with_edges(e for e in self.base.edges if e not in self.negative)

    @cached_property
    def negative_part(self) -> KPartiteHypergraph:
        return self.base.with_edges(e for e in self.base.edges if e in self.negative)

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def h(self) -> int:
        return self.base.h

    @classmethod
    def from_signed_edges(cls, k, h, part_sizes, positive, negative) -> "SignedHypergraph":
        negative = [make_edge(e) for e in negative]
        base = KPartiteHypergraph(k, h, part_sizes, tuple(positive) + tuple(negative))
        return cls(base, frozenset(negative))


def template_edge_count(h: int, k: int) -> int:
    """|E+| + |E-| of T(h, k)."""
    D = comb(k, h)
    return 2 * D * h ** ((h - 1) * D)


def build_template(h: int, k: int, budget: int = DEFAULT_TEMPLATE_BUDGET) -> SignedHypergraph:
    """Positive edges: h-tuples summing to zero.  Negative edges on parts S: sum e_S."""
    if not 2 <= h < k:
        raise ValueError(f"need 2 <= h < k, got h={h}, k={k}")
    predicted = template_edge_count(h, k)
    if predicted > budget:
        raise TemplateTooLarge(
            f"T({h},{k}) would have {predicted} edges and {k * h ** comb(k, h)} vertices (budget {budget})"
        )
    dims = dimensions(h, k)
    D = len(dims)
    N = h ** D
    elems = [GroupElement.decode(h, k, x) for x in range(N)]
    zero = GroupElement.zero(h, k)
    positive, negative = [], []
    for S in dims:
        e_S = GroupElement.unit(h, k, S)
        for head in itertools.product(range(N), repeat=h - 1):
            partial = zero
            for x in head:
                partial = partial + elems[x]
            prefix = tuple(VertexRef(p, x) for p, x in zip(S, head))
            positive.append(prefix + (VertexRef(S[-1], (-partial).encode()),))
            negative.append(prefix + (VertexRef(S[-1], (e_S - partial).encode()),))
    base = KPartiteHypergraph(k, h, (N,) * k, tuple(positive + negative))
    return SignedHypergraph(base, frozenset(make_edge(e) for e in negative))


@dataclass(frozen=True)
class TemplateReport:
    p1_lambda: Optional[int]
    p2_clique: Optional[tuple]
    p3_violation: Optional[tuple]
    p1_detail: str = ""

    @property
    def ok(self) -> bool:
        return self.p1_lambda is not None and self.p2_clique is not None and self.p3_violation is None


def verify_template(T: SignedHypergraph) -> TemplateReport:
    """Certify the three template properties, or exhibit counterexamples.

    P1: both sign classes (h-1, lambda)-regular with the same positive lambda.
    P2: a k-clique using positive edges only.
    P3: no (h+1)-clique (sign-blind) contains a negative edge.
    """
    report = validate(T.base)
    if not report.ok:
        raise ValueError("; ".join(report.violations))
    h, k = T.h, T.k
    pos = regularity(T.positive_part, h - 1)
    neg = regularity(T.negative_part, h - 1)
    if pos.regular and neg.regular and pos.lam == neg.lam and pos.lam > 0:
        p1, detail = pos.lam, ""
    else:
        p1, detail = None, f"positive lambda={pos.lam} witness={pos.witness}; negative lambda={neg.lam} witness={neg.witness}"
    p2 = next(iter_cliques(T.positive_part), None)
    p3 = None
    for parts in itertools.combinations(range(k), h + 1):
        for clique in iter_cliques(T.base, parts):
            if any(sub in T.negative for sub in itertools.combinations(clique, h)):
                p3 = clique
                break
        if p3 is not None:
            break
    return TemplateReport(p1, p2, p3, detail)


def count_template_cliques(T: SignedHypergraph) -> int:
    """Sign-blind k-clique count; every clique must be positive and diagonal."""
    count = 0
    for clique in iter_cliques(T.base):
        if len({v.index for v in clique}) != 1:
            raise TemplateError(f"non-diagonal clique {clique}")
        if any(sub in T.negative for sub in itertools.combinations(clique, T.h)):
            raise TemplateError(f"clique with a negative edge {clique}")
        count += 1
    return count
