"""Exact maxCSP_k via max-weight (hyper)cliques.

Part i of the weighted instance holds every weight-w_i support.  A tuple of
supports is usable only when they are disjoint and ordered (every variable of
an earlier part is smaller than every variable of a later one), so cliques are
in bijection with weight-k supports cut into consecutive blocks.  A monomial
of the instance polynomial is charged to the lexicographically first h-subset
of parts containing all parts it touches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .csp import Assignment, CspInstance, brute_force_optimum, instance_polynomial, negate_instance

DEFAULT_VERTEX_BUDGET = 2_000_000


class NoClique(ValueError):
    pass


class InstanceTooLarge(ValueError):
    pass


def part_weights(k: int, ell: int) -> list:
    """Balanced split; the first k mod ell parts get one extra."""
    base, extra = divmod(k, ell)
    return [base + (i < extra) for i in range(ell)]


def lex_first_cover(parts_touched, h: int, ell: int) -> tuple:
    """Lexicographically first h-subset of range(ell) containing ``parts_touched``."""
    P = set(parts_touched)
    fill = [i for i in range(ell) if i not in P][: h - len(P)]
    return tuple(sorted(P | set(fill)))


@dataclass
class WeightedCliqueInstance:
    ell: int
    h: int
    parts: list  # parts[i] = list of supports (sorted tuples), lex order
    weights: dict = field(default_factory=dict)  # part tuple -> {vertex tuple: weight}
    n_constraints: int = 0
    k: int = 0

    def weight(self, part_tuple, vertex_tuple) -> Optional[int]:
        return self.weights.get(tuple(part_tuple), {}).get(tuple(vertex_tuple))

    def clique_weight(self, vertices: Sequence[int]) -> Optional[int]:
        total = 0
        for I in itertools.combinations(range(self.ell), self.h):
            w = self.weight(I, tuple(vertices[i] for i in I))
            if w is None:
                return None
            total += w
        return total

    def support(self, vertices: Sequence[int]) -> tuple:
        return tuple(v for i, x in enumerate(vertices) for v in self.parts[i][x])

    def weight_bound(self) -> int:
        return self.n_constraints * self.k ** self.h * 2 ** self.h

    def max_abs_weight(self) -> int:
        return max((abs(w) for d in self.weights.values() for w in d.values()), default=0)


def build_weighted_clique_instance(
    inst: CspInstance, k: int, ell: int, h: Optional[int] = None, budget: int = DEFAULT_VERTEX_BUDGET
) -> WeightedCliqueInstance:
    d = inst.degree()
    h = max(d if h is None else h, 2)
    if h < d:
        raise ValueError(f"h={h} is below the instance degree {d}")
    if ell <= h:
        raise ValueError(f"need ell > h (ell={ell}, h={h})")
    if k < ell:
        raise ValueError(f"need ell <= k (ell={ell}, k={k})")
    n = inst.n_vars
    ws = part_weights(k, ell)
    size = sum(comb(n, w) for w in ws)
    if size > budget:
        raise InstanceTooLarge(f"{size} vertices over {ell} parts exceeds budget {budget}")
    parts = [list(itertools.combinations(range(n), w)) for w in ws]
    index = [{s: j for j, s in enumerate(p)} for p in parts]
    poly = instance_polynomial(inst).coeffs
    max_mono = max((len(m) for m in poly), default=0)
    W = WeightedCliqueInstance(ell, h, parts, {}, inst.m, k)
    for I in itertools.combinations(range(ell), h):
        sizes = [ws[i] for i in I]
        cuts = list(itertools.accumulate(sizes))
        table = {}
        for U in itertools.combinations(range(n), cuts[-1]):
            blocks = [U[a:b] for a, b in zip([0] + cuts[:-1], cuts)]
            owner = {v: I[j] for j, blk in enumerate(blocks) for v in blk}
            total = 0
            for r in range(0, min(max_mono, len(U)) + 1):
                for M in itertools.combinations(U, r):
                    c = poly.get(frozenset(M))
                    if c and lex_first_cover({owner[v] for v in M}, h, ell) == I:
                        total += c
            table[tuple(index[i][blk] for i, blk in zip(I, blocks))] = total
        W.weights[I] = table
    return W


def max_weight_triangle(W: WeightedCliqueInstance) -> tuple:
    """Max of w(ab)+w(bc)+w(ac) via a max-plus product; lex-first witness."""
    if W.ell != 3 or W.h != 2:
        raise ValueError("max_weight_triangle needs ell=3, h=2")
    sizes = [len(p) for p in W.parts]

    def dense(i, j):
        M = np.full((sizes[i], sizes[j]), -np.inf)
        for (a, b), w in W.weights.get((i, j), {}).items():
            M[a, b] = w
        return M

    AB, BC, AC = dense(0, 1), dense(1, 2), dense(0, 2)
    # (max,+) product AB (x) BC, one row at a time
    prod = np.empty((sizes[0], sizes[2]))
    for a in range(sizes[0]):
        prod[a] = (AB[a, :, None] + BC).max(axis=0)
    total = prod + AC
    best = total.max() if total.size else -np.inf
    if not np.isfinite(best):
        raise NoClique("no triangle carries a weight")
    a = int(np.flatnonzero((total == best).any(axis=1))[0])
    row = AB[a, :, None] + BC + AC[a][None, :]
    b = int(np.flatnonzero((row == best).any(axis=1))[0])
    c = int(np.flatnonzero(row[b] == best)[0])
    return int(best), (a, b, c)


def exhaustive_triangle(W: WeightedCliqueInstance) -> Optional[tuple]:
    """Plain triple loop, kept as an oracle for the product version."""
    best = None
    for a, b, c in itertools.product(*(range(len(p)) for p in W.parts)):
        w = W.clique_weight((a, b, c))
        if w is not None and (best is None or w > best[0]):
            best = (w, (a, b, c))
    return best


def max_weight_hyperclique(W: WeightedCliqueInstance) -> tuple:
    """Backtracking over ell-transversals in lex order; first maximum wins."""
    ell, h = W.ell, W.h
    new_subsets = [
        [I for I in itertools.combinations(range(j + 1), h) if I[-1] == j] for j in range(ell)
    ]
    best = [None, None]
    chosen = []

    def rec(j: int, acc: int) -> None:
        if j == ell:
            if best[0] is None or acc > best[0]:
                best[0], best[1] = acc, tuple(chosen)
            return
        lo = W.parts[j - 1][chosen[-1]][-1] if j else -1
        for x, s in enumerate(W.parts[j]):
            if s[0] <= lo:
                continue
            chosen.append(x)
            add = 0
            for I in new_subsets[j]:
                w = W.weights[I].get(tuple(chosen[i] for i in I))
                if w is None:
                    break
                add += w
            else:
                rec(j + 1, acc + add)
            chosen.pop()

    rec(0, 0)
    if best[0] is None:
        raise NoClique("no transversal carries weights on all of its h-subsets")
    return best[0], best[1]


def choose_ell(d: int, k: int) -> Optional[int]:
    """Part count for degree d: 3 when d <= 2, else the smallest divisor of k
    above d, else d + 1.  None means no valid choice (fall back to brute force)."""
    if d <= 2:
        return 3 if k >= 3 else None
    for ell in range(d + 1, k + 1):
        if k % ell == 0:
            return ell
    return d + 1 if d + 1 <= k else None


def _solve_linear(inst: CspInstance, k: int) -> tuple:
    poly = instance_polynomial(inst).coeffs
    gain = [poly.get(frozenset((v,)), 0) for v in range(inst.n_vars)]
    order = sorted(range(inst.n_vars), key=lambda v: (-gain[v], v))
    ones = order[:k]
    return poly.get(frozenset(), 0) + sum(gain[v] for v in ones), Assignment(ones)


def _solve_max(inst: CspInstance, k: int) -> tuple:
    if not 0 <= k <= inst.n_vars:
        raise ValueError(f"k={k} out of range for {inst.n_vars} variables")
    d = inst.degree()
    if d <= 1:
        return _solve_linear(inst, k)
    ell = choose_ell(d, k)
    if ell is None:
        return brute_force_optimum(inst, k, "max")
    W = build_weighted_clique_instance(inst, k, ell, h=d)
    if d == 2:
        value, clique = max_weight_triangle(W)
    else:
        value, clique = max_weight_hyperclique(W)
    return value, Assignment(W.support(clique))


def solve_maxcsp(inst: CspInstance, k: int, method: str = "reduction", objective: str = "max") -> tuple:
    if objective not in ("max", "min"):
        raise ValueError(f"objective must be max or min, got {objective!r}")
    if method == "brute":
        return brute_force_optimum(inst, k, objective)
    if method != "reduction":
        raise ValueError(f"unknown method {method!r}")
    if objective == "max":
        return _solve_max(inst, k)
    value, a = _solve_max(negate_instance(inst), k)
    return inst.m - value, a
