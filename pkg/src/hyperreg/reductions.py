"""Hardness constructions from regular 3-uniform hypergraphs to weight-k CSPs,
and the induced-4-cycle reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np

from .boolean import BooleanFunction, degree, symmetrize
from .csp import (
    Constraint,
    CspInstance,
    GroupedTables,
    brute_force_optimum,
    cross_pairs,
    within_pairs,
)
from .hypergraph import (
    KPartiteHypergraph,
    VertexRef,
    complement_partite,
    pair_part_counts,
    regularity,
    validate,
)

PHI = "phi"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionOutput:
    instance: CspInstance
    tau: int
    case_tag: str  # beta_pos | beta_neg | beta_zero
    alpha_sign: int
    working_graph: KPartiteHypergraph
    alpha: int
    beta: int
    lam: int  # (2, lam)-regularity of the working graph
    c_prime: int
    intra_part: bool  # whether the same-part triples were emitted

    @property
    def n(self) -> int:
        return self.working_graph.part_sizes[0]

    @property
    def k(self) -> int:
        return self.working_graph.k


def var_id(G: KPartiteHypergraph, v) -> int:
    return v.part * G.part_sizes[0] + v.index


def part_profile(G: KPartiteHypergraph, ones: Sequence[int]) -> tuple:
    n = G.part_sizes[0]
    ks = [0] * G.k
    for v in ones:
        ks[v // n] += 1
    return tuple(ks)


def induced_edges(G: KPartiteHypergraph, ones: Sequence[int]) -> int:
    """m(S): edges of G inside the support (as variable ids)."""
    n = G.part_sizes[0]
    verts = sorted(VertexRef(v // n, v % n) for v in ones)
    es = G.edge_set
    return sum(1 for t in itertools.combinations(verts, 3) if t in es)


def check_reduction_input(G: KPartiteHypergraph, phi: BooleanFunction) -> int:
    """Return mu after checking every standing assumption."""
    report = validate(G)
    if not report.ok:
        raise PreconditionError("; ".join(report.violations))
    if G.h != 3:
        raise PreconditionError(f"input must be 3-uniform, got h={G.h}")
    if G.k < 4:
        raise PreconditionError(f"need k >= 4, got k={G.k}")
    if not G.balanced:
        raise PreconditionError("input must be balanced")
    if phi.arity != 3 or degree(phi) != 3:
        raise PreconditionError(f"phi must be ternary of degree 3 (arity {phi.arity}, degree {degree(phi)})")
    reg = regularity(G, 2)
    if not reg.regular:
        raise PreconditionError(f"input is not (2, mu)-regular; witness {reg.witness}")
    mu, n = reg.lam, G.part_sizes[0]
    if not 0 < mu < (G.k - 2) * n:
        raise PreconditionError(f"mu={mu} gives q outside (0,1)")
    return mu


def _emit(triples, perms) -> list:
    out = []
    for t in triples:
        for p in perms:
            out.append(Constraint(PHI, (t[p[0]], t[p[1]], t[p[2]])))
    return out


def intra_part_triples(k: int, n: int):
    """Unordered same-part pair {u, v} together with any third variable w."""
    N = k * n
    for i in range(k):
        base = i * n
        for u, v in itertools.combinations(range(base, base + n), 2):
            for w in range(N):
                if w != u and w != v:
                    yield (u, v, w)


def build_reduction(G: KPartiteHypergraph, phi: BooleanFunction, checked: bool = False) -> ReductionOutput:
    """Clique to weight-k CSP reduction with an empirically fitted threshold.

    With ``checked=True`` every weight-k assignment is enumerated and the output
    is refused unless no assignment outside the k-partite ones reaches tau.
    """
    check_reduction_input(G, phi)
    perms, sym = symmetrize(phi)
    alpha, beta = sym.alpha, sym.beta
    work = G if alpha > 0 else complement_partite(G)
    lam = regularity(work, 2).lam
    k, n = G.k, G.part_sizes[0]
    if beta > 0:
        tag, intra = "beta_pos", False
    elif beta < 0:
        tag, intra = "beta_neg", True
    else:
        tag, intra = "beta_zero", alpha < 0
    triples = [tuple(var_id(work, v) for v in e) for e in work.edges]
    constraints = _emit(triples, perms)
    if intra:
        constraints += _emit(intra_part_triples(k, n), perms)
    inst = CspInstance(k * n, {PHI: phi}, constraints)
    a0 = [i * n for i in range(k)]
    c_prime = GroupedTables(inst).evaluate(a0) - alpha * induced_edges(work, a0)
    tau = c_prime + alpha * comb(k, 3) if alpha > 0 else c_prime
    out = ReductionOutput(inst, tau, tag, 1 if alpha > 0 else -1, work, alpha, beta, lam, c_prime, intra)
    if checked:
        stats = check_partite_optimality(out)
        if not stats.sound:
            raise PreconditionError(
                f"threshold not certified: a non-k-partite assignment scores {stats.max_non_partite} >= tau={tau}"
            )
    return out


# constancy terms: Phi(a) minus these is independent of the weight-k assignment


def cross_terms(out: ReductionOutput, ones: Sequence[int]) -> int:
    ks = part_profile(out.working_graph, ones)
    return out.alpha * induced_edges(out.working_graph, ones) + out.beta * out.lam * cross_pairs(ks)


def intra_alpha_count(ks: Sequence[int], m: int) -> int:
    """Fully-satisfied triples: graph edges, plus same-part triples (each met three
    times, once per choice of the free variable), plus two-in-one-part triples."""
    two_one = sum(comb(ks[i], 2) * ks[j] + comb(ks[j], 2) * ks[i] for i, j in itertools.combinations(range(len(ks)), 2))
    return m + 3 * sum(comb(x, 3) for x in ks) + two_one


def intra_beta_count(ks: Sequence[int], lam: int, n: int) -> int:
    k = len(ks)
    return cross_pairs(ks) * (lam + 2 * n - 2) + within_pairs(ks) * (k * n + 2 * n - 6)


def intra_terms(out: ReductionOutput, ones: Sequence[int]) -> int:
    ks = part_profile(out.working_graph, ones)
    m = induced_edges(out.working_graph, ones)
    return out.alpha * intra_alpha_count(ks, m) + out.beta * intra_beta_count(ks, out.lam, out.n)


def intra_terms_uncorrected(out: ReductionOutput, ones: Sequence[int]) -> int:
    """Closed form that undercounts same-part triples; agrees with intra_terms only on k-partite supports."""
    ks = part_profile(out.working_graph, ones)
    m = induced_edges(out.working_graph, ones)
    k, n, lam = out.k, out.n, out.lam
    a = m + sum(comb(x, 3) for x in ks) + sum(
        comb(ks[i], 2) * ks[j] + comb(ks[j], 2) * ks[i] for i, j in itertools.combinations(range(k), 2)
    )
    b = sum(ks[i] * ks[j] * (lam + 2 * n - ks[i] - ks[j]) for i, j in itertools.combinations(range(k), 2))
    b += sum(comb(x, 2) * (k * n - 2) for x in ks)
    return out.alpha * a + out.beta * b


def constancy_terms(out: ReductionOutput, ones: Sequence[int]) -> int:
    return intra_terms(out, ones) if out.intra_part else cross_terms(out, ones)


@dataclass(frozen=True)
class PartiteOptimality:
    max_partite: int
    min_partite: int
    max_non_partite: int
    holds: bool  # every k-partite assignment beats every other one
    sound: bool  # no other assignment reaches tau, so the threshold test is exact


def partite_mask(k: int, n: int, values_len: int) -> np.ndarray:
    combos = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(k * n), k)), dtype=np.int64, count=values_len * k
    ).reshape(values_len, k)
    return np.all(combos // n == np.arange(k), axis=1)


def check_partite_optimality(out: ReductionOutput, values: Optional[np.ndarray] = None) -> PartiteOptimality:
    """Exhaustive comparison of k-partite and other weight-k assignments."""
    k, n = out.k, out.n
    if values is None:
        values = GroupedTables(out.instance).weight_k_values(k)
    mask = partite_mask(k, n, len(values))
    part, other = values[mask], values[~mask]
    mx_other = int(other.max()) if other.size else -(10 ** 18)
    return PartiteOptimality(int(part.max()), int(part.min()), mx_other, mx_other < int(part.min()), mx_other < out.tau)


def decide_clique_via_csp(
    G: KPartiteHypergraph, phi: BooleanFunction, solver: Optional[Callable] = None
) -> tuple:
    """Return (has_clique, optimum, ReductionOutput).  ``solver(inst, k) -> value``."""
    out = build_reduction(G, phi)
    if solver is None:
        value = brute_force_optimum(out.instance, G.k, "max")[0]
    else:
        value = solver(out.instance, G.k)
    return value >= out.tau, value, out


# induced 4-cycles


@dataclass(frozen=True)
class SimpleGraph:
    n_vertices: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list:
        return [len(a) for a in self.adjacency()]


def c4_vertex(n: int, i: int, x: int, y: int) -> int:
    """Id of the pair (x in part i, y in part i+1 mod 4)."""
    return i * n * n + x * n + y


def c4_reduce(G: KPartiteHypergraph) -> SimpleGraph:
    report = validate(G)
    if not report.ok:
        raise PreconditionError("; ".join(report.violations))
    if G.k != 4 or G.h != 3 or not G.balanced:
        raise PreconditionError("need a balanced 4-partite 3-uniform hypergraph")
    if not regularity(G, 2).regular:
        raise PreconditionError("input is not (2, lambda)-regular")
    n = G.part_sizes[0]
    comp = G.completions
    edges = set()
    for i in range(4):
        j, l = (i + 1) % 4, (i + 2) % 4
        for y in range(n):
            # rule 1: same second coordinate
            for x, x2 in itertools.combinations(range(n), 2):
                edges.add((c4_vertex(n, i, x, y), c4_vertex(n, i, x2, y)))
        for x in range(n):
            for y in range(n):
                # rule 2: (x, y) -> (y, y') when {x, y, y'} is an edge
                key = tuple(sorted((VertexRef(i, x), VertexRef(j, y))))
                for y2 in comp.get(key, {}).get(l, ()):
                    edges.add((c4_vertex(n, i, x, y), c4_vertex(n, j, y, y2)))
    return SimpleGraph(4 * n * n, frozenset(edges))


def c4_expected_degree(G: KPartiteHypergraph) -> int:
    """(n-1) + 2 * (completions of a pair inside one given third part)."""
    per_part = pair_part_counts(G)
    if per_part is None:
        raise PreconditionError("pair completions are not uniform across third parts")
    return G.part_sizes[0] - 1 + 2 * per_part


def detect_induced_c4(G: SimpleGraph) -> Optional[tuple]:
    """Four vertices a-b-d-c-a inducing a 4-cycle, or None."""
    adj = G.adjacency()
    for a in range(G.n_vertices):
        na = adj[a]
        for b, c in itertools.combinations(sorted(na), 2):
            if c in adj[b]:
                continue
            for d in sorted(adj[b] & adj[c]):
                if d != a and d not in na:
                    return (a, b, d, c)
    return None


def is_induced_c4(G: SimpleGraph, cycle: Sequence[int]) -> bool:
    a, b, d, c = cycle
    e = G.edges

    def adj(u, v):
        return (min(u, v), max(u, v)) in e

    return len(set(cycle)) == 4 and adj(a, b) and adj(b, d) and adj(d, c) and adj(c, a) and not adj(a, d) and not adj(b, c)
