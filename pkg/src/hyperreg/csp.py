"""Weight-k Boolean CSP instances and the exhaustive optimization oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .boolean import BooleanFunction, MultilinearPolynomial, characteristic_polynomial, negate


class InvalidInstance(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    fn: str
    vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(int(v) for v in self.vars))


@dataclass(frozen=True)
class Assignment:
    ones: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ones", frozenset(int(v) for v in self.ones))

    @property
    def weight(self) -> int:
        return len(self.ones)

    def sorted(self) -> tuple:
        return tuple(sorted(self.ones))

    def __str__(self) -> str:
        return ",".join(map(str, self.sorted()))


@dataclass(frozen=True)
class CspInstance:
    n_vars: int
    functions: dict
    constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "functions", dict(self.functions))
        for c in self.constraints:
            fn = self.functions.get(c.fn)
            if fn is None:
                raise InvalidInstance(f"constraint uses unregistered function {c.fn!r}")
            if len(c.vars) != fn.arity:
                raise InvalidInstance(f"{c.fn} has arity {fn.arity} but got {len(c.vars)} variables")
            if len(set(c.vars)) != len(c.vars):
                raise InvalidInstance(f"repeated variable in constraint {c}")
            if not all(0 <= v < self.n_vars for v in c.vars):
                raise InvalidInstance(f"variable id out of range in {c}")

    @property
    def m(self) -> int:
        return len(self.constraints)

    def degree(self) -> int:
        used = {c.fn for c in self.constraints}
        return max((characteristic_polynomial(self.functions[f]).degree for f in used), default=0)

    def with_constraints(self, extra: Iterable[Constraint], functions: Optional[dict] = None) -> "CspInstance":
        fns = dict(self.functions)
        fns.update(functions or {})
        return CspInstance(self.n_vars, fns, self.constraints + tuple(extra))


def _check_assignment(inst: CspInstance, a: Assignment) -> None:
    bad = [v for v in a.ones if not 0 <= v < inst.n_vars]
    if bad:
        raise InvalidInstance(f"invalid variable id(s) {sorted(bad)} for {inst.n_vars} variables")


def evaluate_instance(inst: CspInstance, a: Assignment) -> int:
    """Number of satisfied constraints, read straight off the truth tables."""
    _check_assignment(inst, a)
    ones = a.ones
    total = 0
    for c in inst.constraints:
        total += inst.functions[c.fn](*(v in ones for v in c.vars))
    return total


def instance_polynomial(inst: CspInstance) -> MultilinearPolynomial:
    """Sum of the characteristic polynomials of all constraints, over variable ids."""
    cache = {}
    acc: dict = {}
    for c in inst.constraints:
        if c.fn not in cache:
            cache[c.fn] = characteristic_polynomial(inst.functions[c.fn])
        for mono, coef in cache[c.fn].coeffs.items():
            key = frozenset(c.vars[j] for j in mono)
            acc[key] = acc.get(key, 0) + coef
    return MultilinearPolynomial(acc)


def evaluate_polynomial(inst: CspInstance, a: Assignment, poly: Optional[MultilinearPolynomial] = None) -> int:
    _check_assignment(inst, a)
    poly = poly if poly is not None else instance_polynomial(inst)
    ones = a.ones
    return sum(c for mono, c in poly.coeffs.items() if mono <= ones)


def negate_instance(inst: CspInstance) -> CspInstance:
    return CspInstance(inst.n_vars, {k: negate(f) for k, f in inst.functions.items()}, inst.constraints)


def _permuted_table(fn: BooleanFunction, order: Sequence[int]) -> list:
    """Truth table re-indexed by a mask over the arguments listed in ``order``."""
    r = len(order)
    out = []
    for mask in range(1 << r):
        args = [0] * r
        for pos, j in enumerate(order):
            args[j] = (mask >> pos) & 1
        out.append(fn(*args))
    return out


class GroupedTables:
    """Constraints merged per variable set: one integer table per set.

    ``value(S) = base + sum over groups meeting S of table[mask] - table[0]``.
    Tables are padded to a common width so they sit in one flat array.
    """

    def __init__(self, inst: CspInstance):
        groups: dict = {}
        permuted: dict = {}
        for c in inst.constraints:
            order = tuple(sorted(range(len(c.vars)), key=lambda j: c.vars[j]))
            key = tuple(c.vars[j] for j in order)
            pt = permuted.get((c.fn, order))
            if pt is None:
                pt = permuted[(c.fn, order)] = _permuted_table(inst.functions[c.fn], order)
            table = groups.get(key)
            if table is None:
                groups[key] = list(pt)
            else:
                for mask, val in enumerate(pt):
                    table[mask] += val
        self.n_vars = inst.n_vars
        self.keys = list(groups)
        width = max((len(k) for k in self.keys), default=0)
        self.width = 1 << width
        n_groups = len(self.keys)
        flat = np.zeros(n_groups * self.width, dtype=np.int64)
        for g, key in enumerate(self.keys):
            flat[g * self.width: g * self.width + (1 << len(key))] = groups[key]
        self.flat = flat
        self.base = int(sum(groups[k][0] for k in self.keys))
        # membership list sorted by variable
        mv, mg, mb = [], [], []
        for g, key in enumerate(self.keys):
            for pos, v in enumerate(key):
                mv.append(v)
                mg.append(g)
                mb.append(1 << pos)
        order = np.argsort(np.asarray(mv, dtype=np.int64), kind="stable")
        self.mem_var = np.asarray(mv, dtype=np.int64)[order]
        self.mem_group = np.asarray(mg, dtype=np.int64)[order]
        self.mem_bit = np.asarray(mb, dtype=np.int64)[order]
        self.offsets = np.searchsorted(self.mem_var, np.arange(self.n_vars + 1))
        self.gbase = np.arange(n_groups, dtype=np.int64) * self.width

    def evaluate(self, ones: Iterable[int]) -> int:
        masks: dict = {}
        for v in ones:
            lo, hi = self.offsets[v], self.offsets[v + 1]
            for g, b in zip(self.mem_group[lo:hi].tolist(), self.mem_bit[lo:hi].tolist()):
                masks[g] = masks.get(g, 0) | b
        total = self.base
        for g, mask in masks.items():
            total += int(self.flat[g * self.width + mask] - self.flat[g * self.width])
        return total

    def weight_k_values(self, k: int) -> np.ndarray:
        """Objective of every weight-k assignment, in itertools.combinations order."""
        n = self.n_vars
        if not 0 <= k <= n:
            raise ValueError(f"k={k} out of range for {n} variables")
        if k == 0:
            return np.array([self.base], dtype=np.int64)
        out = np.empty(comb(n, k), dtype=np.int64)
        mask = np.zeros(len(self.keys), dtype=np.int64)
        flat, gbase = self.flat, self.gbase
        pos = 0

        def toggle(v: int, sign: int) -> int:
            lo, hi = self.offsets[v], self.offsets[v + 1]
            g = self.mem_group[lo:hi]
            b = self.mem_bit[lo:hi]
            old = mask[g]
            new = old | b if sign > 0 else old & ~b
            mask[g] = new
            return int(flat[gbase[g] + new].sum() - flat[gbase[g] + old].sum())

        def last_level(first: int, total: int) -> None:
            nonlocal pos
            lo = self.offsets[first]
            g = self.mem_group[lo:]
            old = mask[g]
            d = flat[gbase[g] + (old | self.mem_bit[lo:])] - flat[gbase[g] + old]
            deltas = np.bincount(self.mem_var[lo:] - first, weights=d, minlength=n - first)
            cnt = n - first
            # float64 bincount is exact for these magnitudes
            out[pos: pos + cnt] = total + np.rint(deltas[:cnt]).astype(np.int64)
            pos += cnt

        def rec(start: int, depth: int, total: int) -> None:
            if depth == k - 1:
                last_level(start, total)
                return
            for v in range(start, n - (k - 1 - depth)):
                dv = toggle(v, 1)
                rec(v + 1, depth + 1, total + dv)
                toggle(v, -1)

        rec(0, 0, self.base)
        assert pos == len(out)
        return out


def weight_k_values(inst: CspInstance, k: int) -> np.ndarray:
    return GroupedTables(inst).weight_k_values(k)


def nth_combination(n: int, k: int, index: int) -> tuple:
    """The index-th k-subset of range(n) in lexicographic order."""
    out = []
    v = 0
    for remaining in range(k, 0, -1):
        while True:
            block = comb(n - v - 1, remaining - 1)
            if index < block:
                break
            index -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def brute_force_optimum(inst: CspInstance, k: int, objective: str = "max") -> tuple:
    """Exact optimum over all weight-k assignments; ties go to the lex-smallest support."""
    if objective not in ("max", "min"):
        raise ValueError(f"objective must be max or min, got {objective!r}")
    if not 0 <= k <= inst.n_vars:
        raise ValueError(f"k={k} out of range for {inst.n_vars} variables")
    vals = weight_k_values(inst, k)
    idx = int(np.argmax(vals) if objective == "max" else np.argmin(vals))
    return int(vals[idx]), Assignment(nth_combination(inst.n_vars, k, idx))


def random_assignments(n: int, k: int, count: int, rng) -> Iterator[Assignment]:
    for _ in range(count):
        yield Assignment(rng.sample(range(n), k))


def weak_compositions(total: int, parts: int) -> Iterator[tuple]:
    """All (k_1..k_parts) of non-negative integers summing to total."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars + (total + parts - 1,):
            out.append(b - prev - 1)
            prev = b
        yield tuple(out)


def cross_pairs(ks: Sequence[int]) -> int:
    """Sum over i<j of k_i k_j."""
    s = sum(ks)
    return (s * s - sum(x * x for x in ks)) // 2


def within_pairs(ks: Sequence[int]) -> int:
    return sum(comb(x, 2) for x in ks)
