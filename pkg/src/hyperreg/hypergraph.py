"""k-partite h-uniform hypergraphs: representation, validation, regularity and cliques.

Vertices are ``(part, index)`` pairs, 0-based.  Edges are tuples of vertices
sorted by part, so two edges on the same vertex set compare equal.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class VertexRef(NamedTuple):
    part: int
    index: int

    def __str__(self) -> str:
        return f"{self.part}:{self.index}"


Edge = tuple  # tuple[VertexRef, ...], sorted by part


def make_edge(vertices: Iterable[Sequence[int]]) -> Edge:
    """Canonical form of an edge: vertices sorted by (part, index)."""
    return tuple(sorted(VertexRef(int(p), int(i)) for p, i in vertices))


class MalformedHypergraph(ValueError):
    pass


@dataclass(frozen=True)
class KPartiteHypergraph:
    k: int
    h: int
    part_sizes: tuple
    edges: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "part_sizes", tuple(int(n) for n in self.part_sizes))
        object.__setattr__(self, "edges", tuple(sorted(make_edge(e) for e in self.edges)))

    @classmethod
    def from_edges(cls, k, h, part_sizes, edges) -> "KPartiteHypergraph":
        """Build and reject anything ``validate`` would complain about."""
        H = cls(k, h, part_sizes, tuple(edges))
        report = validate(H)
        if not report.ok:
            raise MalformedHypergraph("; ".join(report.violations))
        return H

    @property
    def balanced(self) -> bool:
        return len(set(self.part_sizes)) <= 1

    @property
    def n_vertices(self) -> int:
        return sum(self.part_sizes)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __contains__(self, edge) -> bool:
        return make_edge(edge) in self.edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> Iterator[VertexRef]:
        for p, size in enumerate(self.part_sizes):
            for i in range(size):
                yield VertexRef(p, i)

    @cached_property
    def completions(self) -> dict:
        """Map each (h-1)-subset of an edge to ``{part: set of completing indices}``."""
        index: dict = {}
        for e in self.edges:
            for drop in range(self.h):
                sub = e[:drop] + e[drop + 1:]
                v = e[drop]
                index.setdefault(sub, {}).setdefault(v.part, set()).add(v.index)
        return index

    def with_edges(self, edges) -> "KPartiteHypergraph":
        return KPartiteHypergraph(self.k, self.h, self.part_sizes, tuple(edges))


def cross_part_tuples(part_sizes: Sequence[int], s: int) -> Iterator[Edge]:
    """All s-tuples with one vertex in each of s distinct parts, in lexicographic order."""
    for parts in itertools.combinations(range(len(part_sizes)), s):
        for idx in itertools.product(*(range(part_sizes[p]) for p in parts)):
            yield tuple(VertexRef(p, i) for p, i in zip(parts, idx))


def n_cross_part_tuples(part_sizes: Sequence[int], s: int) -> int:
    total = 0
    for parts in itertools.combinations(range(len(part_sizes)), s):
        n = 1
        for p in parts:
            n *= part_sizes[p]
        total += n
    return total


# -- validation -------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(H: KPartiteHypergraph) -> ValidationReport:
    report = ValidationReport()
    v = report.violations
    if H.k < 2:
        v.append(f"k={H.k} must be at least 2")
    if not 2 <= H.h < H.k:
        v.append(f"h={H.h} must satisfy 2 <= h < k")
    if len(H.part_sizes) != H.k:
        v.append(f"expected {H.k} part sizes, got {len(H.part_sizes)}")
    if any(n <= 0 for n in H.part_sizes):
        v.append("part sizes must be positive")
    seen = Counter(H.edges)
    for e, mult in seen.items():
        label = " ".join(map(str, e))
        if mult > 1:
            v.append(f"duplicate edge {label}")
        if len(e) != H.h:
            v.append(f"edge {label} has {len(e)} vertices, expected {H.h}")
        parts = [x.part for x in e]
        if len(set(parts)) != len(parts):
            v.append(f"repeated part in edge {label}")
        for x in e:
            if not 0 <= x.part < len(H.part_sizes):
                v.append(f"part out of range in edge {label}")
            elif not 0 <= x.index < H.part_sizes[x.part]:
                v.append(f"index out of range in edge {label}")
    return report


def _require_valid(H: KPartiteHypergraph) -> None:
    report = validate(H)
    if not report.ok:
        raise MalformedHypergraph("; ".join(report.violations))


# -- regularity -------------------------------------------------------------

@dataclass(frozen=True)
class RegularityReport:
    s: int
    lam: Optional[int]
    witness: Optional[tuple] = None  # (s-tuple of VertexRef, observed count)

    @property
    def regular(self) -> bool:
        return self.lam is not None


def incidence_counts(H: KPartiteHypergraph, s: int) -> Counter:
    """Number of edges containing each cross-part s-tuple (absent tuples count 0)."""
    counts: Counter = Counter()
    for e in H.edges:
        counts.update(itertools.combinations(e, s))
    return counts


def regularity(H: KPartiteHypergraph, s: int) -> RegularityReport:
    """Check (s, lambda)-regularity over all cross-part s-tuples, zeros included."""
    if not 1 <= s < H.h:
        raise ValueError(f"s={s} must satisfy 1 <= s < h={H.h}")
    _require_valid(H)
    counts = incidence_counts(H, s)
    total = n_cross_part_tuples(H.part_sizes, s)
    values = set(counts.values())
    if len(counts) == total and len(values) == 1:
        return RegularityReport(s, values.pop())
    if not counts:
        return RegularityReport(s, 0)
    # irregular: report the first tuple (lexicographically) disagreeing with the first one
    tuples = cross_part_tuples(H.part_sizes, s)
    ref = counts.get(next(tuples), 0)
    for t in tuples:
        c = counts.get(t, 0)
        if c != ref:
            return RegularityReport(s, None, (t, c))
    raise AssertionError("unreachable: irregular counts without witness")


def pair_part_counts(H: KPartiteHypergraph) -> Optional[int]:
    """For 3-uniform H: the common number of completions of a cross-part pair
    inside each single third part, or None if that number is not uniform."""
    if H.h != 3:
        raise ValueError("pair_part_counts needs a 3-uniform hypergraph")
    found = set()
    for (a, b) in cross_part_tuples(H.part_sizes, 2):
        comp = H.completions.get((a, b), {})
        for p in range(H.k):
            if p not in (a.part, b.part):
                found.add(len(comp.get(p, ())))
                if len(found) > 1:
                    return None
    return found.pop() if found else 0


# -- cliques ----------------------------------------------------------------

def iter_cliques(H: KPartiteHypergraph, parts: Optional[Sequence[int]] = None) -> Iterator[tuple]:
    """Transversals of ``parts`` (default: all parts) whose every h-subset is an edge.

    Yields in lexicographic order of the index tuples.
    """
    parts = tuple(range(H.k)) if parts is None else tuple(parts)
    comp = H.completions
    h = H.h
    chosen: list = []

    def extend() -> Iterator[tuple]:
        j = len(chosen)
        if j == len(parts):
            yield tuple(chosen)
            return
        p = parts[j]
        if j < h - 1:
            cands: Iterable[int] = range(H.part_sizes[p])
        else:
            pool = None
            for sub in itertools.combinations(chosen, h - 1):
                got = comp.get(sub, {}).get(p)
                if not got:
                    return
                pool = set(got) if pool is None else pool & got
                if not pool:
                    return
            cands = sorted(pool)
        for i in cands:
            chosen.append(VertexRef(p, i))
            yield from extend()
            chosen.pop()

    yield from extend()


def find_k_clique(H: KPartiteHypergraph) -> Optional[tuple]:
    _require_valid(H)
    return next(iter_cliques(H), None)


def count_k_cliques(H: KPartiteHypergraph) -> int:
    _require_valid(H)
    return sum(1 for _ in iter_cliques(H))


def is_clique(H: KPartiteHypergraph, vertices: Sequence) -> bool:
    verts = make_edge(vertices)
    if len({v.part for v in verts}) != len(verts):
        return False
    edges = H.edge_set
    return all(sub in edges for sub in itertools.combinations(verts, H.h))


# -- constructions ----------------------------------------------------------

def complete_partite(k: int, h: int, part_sizes: Sequence[int]) -> KPartiteHypergraph:
    return KPartiteHypergraph(k, h, part_sizes, tuple(cross_part_tuples(part_sizes, h)))


def complement_partite(H: KPartiteHypergraph) -> KPartiteHypergraph:
    """Cross-part h-tuples that are not edges of H."""
    present = H.edge_set
    return H.with_edges(t for t in cross_part_tuples(H.part_sizes, H.h) if t not in present)


def random_hypergraph(k: int, h: int, n: int, p: float, seed: int) -> KPartiteHypergraph:
    """Each cross-part h-tuple is kept with probability p.

    Stream: one ``random.Random(seed).random()`` draw per tuple, tuples visited in
    ``cross_part_tuples`` order; the tuple is an edge iff the draw is < p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    sizes = (n,) * k
    return KPartiteHypergraph(k, h, sizes, tuple(t for t in cross_part_tuples(sizes, h) if rng.random() < p))


def generate_sum_regular(k: int, n: int, constant_sets: dict) -> KPartiteHypergraph:
    """3-uniform hypergraph on k copies of Z/nZ; {x, y, z} on parts i<j<l is an
    edge iff x + y + z mod n lies in ``constant_sets[(i, j, l)]``.

    Every cross-part pair then lies in exactly (k-2)*t edges.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    if n < 2:
        raise ValueError("n must be at least 2")
    triples = list(itertools.combinations(range(k), 3))
    sets = {}
    for T in triples:
        key = T if T in constant_sets else frozenset(T)
        if key not in constant_sets:
            raise ValueError(f"missing constant set for parts {T}")
        sets[T] = frozenset(int(c) % n for c in constant_sets[key])
    sizes = {len(s) for s in sets.values()}
    if len(sizes) != 1:
        raise ValueError("all constant sets must have the same size t")
    t = sizes.pop()
    if not 0 < t < n:
        raise ValueError(f"t={t} must satisfy 0 < t < n={n}")
    edges = []
    for (i, j, l) in triples:
        C = sets[(i, j, l)]
        for x in range(n):
            for y in range(n):
                for c in C:
                    z = (c - x - y) % n
                    edges.append((VertexRef(i, x), VertexRef(j, y), VertexRef(l, z)))
    return KPartiteHypergraph(k, 3, (n,) * k, tuple(edges))


def random_constant_sets(k: int, n: int, t: int, seed: int, zero: Optional[bool] = None) -> dict:
    """Seeded size-t subsets of Z/nZ for every part triple.

    ``zero=True`` forces 0 into every set (so the all-zero transversal is a clique),
    ``zero=False`` keeps 0 out of every set.
    """
    if not 0 < t < n:
        raise ValueError(f"t={t} must satisfy 0 < t < n={n}")
    rng = random.Random(seed)
    out = {}
    for T in itertools.combinations(range(k), 3):
        if zero is True:
            out[T] = {0, *rng.sample(range(1, n), t - 1)}
        elif zero is False:
            out[T] = set(rng.sample(range(1, n), t))
        else:
            out[T] = set(rng.sample(range(n), t))
    return out


def generate_parity_regular(k: int, n: int, seed: int) -> KPartiteHypergraph:
    """Clique-free (2, (k-2)*n/2)-regular 3-uniform hypergraph on k parts of size n.

    Vertex x gets the colour c(x) = x mod 4, read as a vector in GF(2)^2.  Each
    ordered part pair (i, l) gets a vector a[i, l], pairwise distinct over i for
    fixed l.  On parts T = {i, j, l} the coefficient of vertex l is
    a[i, l] + a[j, l] (nonzero), and {x_i, x_j, x_l} is an edge iff
    sum_v <coef_v, c(x_v)> = b_T.  Summed over the four triples of any four
    parts, the left-hand sides cancel, so choosing those b_T with odd sum rules
    out every 4-clique; the nonzero coefficients give exactly n/2 completions
    per pair and third part.
    """
    if not 4 <= k <= 5:
        raise ValueError("parity construction supports k in {4, 5}")
    if n % 4:
        raise ValueError("n must be divisible by 4")
    rng = random.Random(seed)
    a = {}
    for l in range(k):
        for rank, i in enumerate(p for p in range(k) if p != l):
            a[i, l] = rank
    triples = list(itertools.combinations(range(k), 3))
    b = {T: rng.randrange(2) for T in triples}
    if sum(b[T] for T in itertools.combinations(range(4), 3)) % 2 == 0:
        b[(0, 1, 2)] ^= 1

    def dot(u: int, v: int) -> int:
        return bin(u & v).count("1") & 1

    edges = []
    for T in triples:
        coef = {v: a[u, v] ^ a[w, v] for v, (u, w) in zip(T, ((T[1], T[2]), (T[0], T[2]), (T[0], T[1])))}
        i, j, l = T
        for x in range(n):
            for y in range(n):
                lhs = dot(coef[i], x % 4) ^ dot(coef[j], y % 4)
                for z in range(n):
                    if lhs ^ dot(coef[l], z % 4) == b[T]:
                        edges.append((VertexRef(i, x), VertexRef(j, y), VertexRef(l, z)))
    return KPartiteHypergraph(k, 3, (n,) * k, tuple(edges))


# -- flat hypergraphs -------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    """h-uniform hypergraph on vertices 0..n_vertices-1 with no partition."""

    n_vertices: int
    h: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        edges = frozenset(tuple(sorted(int(v) for v in e)) for e in self.edges)
        for e in edges:
            if len(set(e)) != self.h or not all(0 <= v < self.n_vertices for v in e):
                raise MalformedHypergraph(f"bad edge {e}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def flatten(cls, H: KPartiteHypergraph) -> "Hypergraph":
        offsets = [0]
        for n in H.part_sizes:
            offsets.append(offsets[-1] + n)
        return cls(H.n_vertices, H.h, frozenset(tuple(offsets[v.part] + v.index for v in e) for e in H.edges))

    def is_edge(self, vertices) -> bool:
        return tuple(sorted(vertices)) in self.edges


def random_flat_hypergraph(n_vertices: int, h: int, p: float, seed: int) -> Hypergraph:
    rng = random.Random(seed)
    return Hypergraph(
        n_vertices, h, frozenset(e for e in itertools.combinations(range(n_vertices), h) if rng.random() < p)
    )


def count_flat_cliques(G: Hypergraph, k: int) -> int:
    """Number of k-vertex sets of G all of whose h-subsets are edges."""
    return sum(
        1
        for S in itertools.combinations(range(G.n_vertices), k)
        if all(sub in G.edges for sub in itertools.combinations(S, G.h))
    )


def expected_edge_count(k: int, h: int, n: int, s: int, lam: int) -> int:
    """Edges of a balanced (s, lam)-regular hypergraph, by double counting."""
    num = lam * comb(k, s) * n ** s
    den = comb(h, s)
    if num % den:
        raise ValueError("double count is not integral")
    return num // den
