"""Boolean functions and their integer multilinear polynomials.

Truth-table bit order: entry ``t`` is the value on the input whose argument j
equals bit j of t (argument 0 least significant).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class DegreeTooLow(ValueError):
    pass


class NoTernarySubstitution(RuntimeError):
    """No substitution of the extra arguments keeps degree 3."""


@dataclass(frozen=True)
class BooleanFunction:
    arity: int
    truth_table: tuple

    def __post_init__(self):
        tt = tuple(int(b) for b in self.truth_table)
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        if len(tt) != 1 << self.arity:
            raise ValueError(f"truth table of arity {self.arity} needs {1 << self.arity} entries, got {len(tt)}")
        if any(b not in (0, 1) for b in tt):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "truth_table", tt)

    @classmethod
    def from_bits(cls, bits: str) -> "BooleanFunction":
        n = len(bits)
        r = n.bit_length() - 1
        if n < 2 or 1 << r != n:
            raise ValueError(f"truth table length {n} is not a power of two >= 2")
        return cls(r, tuple(int(c) for c in bits))

    @classmethod
    def from_callable(cls, arity: int, fn) -> "BooleanFunction":
        return cls(arity, tuple(int(bool(fn(*unpack(t, arity)))) for t in range(1 << arity)))

    @property
    def bits(self) -> str:
        return "".join(map(str, self.truth_table))

    def __call__(self, *args) -> int:
        return self.truth_table[pack(args)]


def pack(args: Sequence[int]) -> int:
    return sum(int(a) << j for j, a in enumerate(args))


def unpack(t: int, arity: int) -> tuple:
    return tuple((t >> j) & 1 for j in range(arity))


AND2 = BooleanFunction.from_callable(2, lambda x, y: x and y)
OR2 = BooleanFunction.from_callable(2, lambda x, y: x or y)
XOR2 = BooleanFunction.from_callable(2, lambda x, y: x ^ y)
AND3 = BooleanFunction.from_callable(3, lambda x, y, z: x and y and z)
OR3 = BooleanFunction.from_callable(3, lambda x, y, z: x or y or z)
MAJ3 = BooleanFunction.from_callable(3, lambda x, y, z: x + y + z >= 2)
NAE3 = BooleanFunction.from_callable(3, lambda x, y, z: not (x == y == z))
ALLEQ3 = BooleanFunction.from_callable(3, lambda x, y, z: x == y == z)
AND4 = BooleanFunction.from_callable(4, lambda *xs: all(xs))
# true iff the bit string is sorted ascending or descending
SORT4 = BooleanFunction.from_callable(4, lambda *xs: list(xs) in (sorted(xs), sorted(xs, reverse=True)))
# if s then x else y
SELECT3 = BooleanFunction.from_callable(3, lambda s, x, y: x if s else y)

NAMED = {
    "and2": AND2, "or2": OR2, "xor2": XOR2, "and3": AND3, "or3": OR3, "maj3": MAJ3,
    "nae3": NAE3, "alleq3": ALLEQ3, "and4": AND4, "sort4": SORT4, "select3": SELECT3,
}


@dataclass(frozen=True)
class MultilinearPolynomial:
    """Integer polynomial; keys are frozensets of variables (any hashables)."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {frozenset(m): int(c) for m, c in self.coeffs.items() if c})

    def __call__(self, point) -> int:
        """``point`` maps variable -> 0/1 (or is a sequence indexed by variable)."""
        total = 0
        for mono, c in self.coeffs.items():
            if all(point[v] for v in mono):
                total += c
        return total

    def __add__(self, other: "MultilinearPolynomial") -> "MultilinearPolynomial":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultilinearPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.coeffs), default=0)

    def rename(self, mapping: Sequence) -> "MultilinearPolynomial":
        """Substitute variable j -> mapping[j] (mapping must be injective)."""
        return MultilinearPolynomial({frozenset(mapping[v] for v in m): c for m, c in self.coeffs.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda mc: (len(mc[0]), sorted(mc[0])))
        return " + ".join(f"{c}*{'*'.join(f'x{v}' for v in sorted(m)) or '1'}" for m, c in terms)


def characteristic_polynomial(phi: BooleanFunction) -> MultilinearPolynomial:
    """Moebius inversion over the subset lattice of argument positions."""
    r = phi.arity
    a = list(phi.truth_table)
    for j in range(r):
        bit = 1 << j
        for t in range(1 << r):
            if t & bit:
                a[t] -= a[t ^ bit]
    return MultilinearPolynomial({frozenset(unpack_set(t, r)): c for t, c in enumerate(a) if c})


def unpack_set(t: int, r: int) -> tuple:
    return tuple(j for j in range(r) if (t >> j) & 1)


def degree(phi: BooleanFunction) -> int:
    return characteristic_polynomial(phi).degree


@dataclass(frozen=True)
class SymmetricCoefficients:
    alpha: int
    beta: int
    gamma: int
    delta: int

    def __call__(self, x: int, y: int, z: int) -> int:
        return self.alpha * x * y * z + self.beta * (x * y + x * z + y * z) + self.gamma * (x + y + z) + self.delta


def symmetrize(phi: BooleanFunction) -> tuple:
    """Return (the six argument permutations, SymmetricCoefficients).

    Each permutation ``p`` stands for the constraint phi(x_p0, x_p1, x_p2).
    """
    if phi.arity != 3:
        raise ValueError(f"symmetrize needs a ternary function, got arity {phi.arity}")
    f = characteristic_polynomial(phi)
    c = {k: f.coeffs.get(frozenset(k), 0) for k in [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]}
    coeffs = SymmetricCoefficients(
        alpha=6 * c[(0, 1, 2)],
        beta=2 * (c[(0, 1)] + c[(0, 2)] + c[(1, 2)]),
        gamma=2 * (c[(0,)] + c[(1,)] + c[(2,)]),
        delta=6 * c[()],
    )
    return list(itertools.permutations(range(3))), coeffs


def substitute(phi: BooleanFunction, subst: Sequence[int]) -> BooleanFunction:
    """Ternary function with argument 3+j replaced by argument subst[j] (in 0..2)."""
    extra = tuple(subst)
    if len(extra) != phi.arity - 3 or any(not 0 <= s < 3 for s in extra):
        raise ValueError("substitution must map each extra argument onto 0..2")

    def g(x, y, z):
        base = (x, y, z)
        return phi(*base, *(base[s] for s in extra))

    return BooleanFunction.from_callable(3, g)


def reduce_to_ternary(phi: BooleanFunction) -> tuple:
    """First substitution (lex order over {0,1,2}^(r-3)) keeping degree 3.

    Returns (ternary function, substitution tuple).
    """
    d = degree(phi)
    if d < 3 or phi.arity < 3:
        raise DegreeTooLow(f"need degree >= 3, got degree {d}")
    for subst in itertools.product(range(3), repeat=phi.arity - 3):
        psi = substitute(phi, subst)
        if degree(psi) == 3:
            return psi, subst
    raise NoTernarySubstitution(f"no substitution of {phi.bits} reaches degree 3")


def negate(phi: BooleanFunction) -> BooleanFunction:
    return BooleanFunction(phi.arity, tuple(1 - b for b in phi.truth_table))


def all_functions(arity: int) -> Iterable[BooleanFunction]:
    n = 1 << arity
    for code in range(1 << n):
        yield BooleanFunction(arity, tuple((code >> t) & 1 for t in range(n)))


def function_degree_family(funcs: Iterable[BooleanFunction]) -> int:
    return max((degree(f) for f in funcs), default=0)


def lookup(name: str) -> Optional[BooleanFunction]:
    return NAMED.get(name.lower())
