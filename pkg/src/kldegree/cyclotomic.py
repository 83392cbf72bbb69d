"""Exact arithmetic in Z[zeta_p] and detection of the subfield an element generates.

A :class:`CycInt` stores ``c_0 + c_1 zeta + ... + c_{p-2} zeta^{p-2}`` in the power
basis, with ``zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})``.  Because the power basis
is a Z-basis, two elements are equal exactly when their coefficient tuples agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath

from ._arith import divisors, primitive_root


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]) -> None:
        if len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} coefficients for p = {p}, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def from_int(cls, p: int, c: int) -> CycInt:
        return cls(p, [c] + [0] * (p - 2))

    @classmethod
    def from_redundant(cls, p: int, vec: Sequence[int]) -> CycInt:
        """Reduce a length-p vector of coefficients of 1, zeta, ..., zeta^{p-1}."""
        if len(vec) != p:
            raise ValueError(f"expected {p} redundant coefficients")
        top = int(vec[-1])
        return cls(p, [int(c) - top for c in vec[:-1]])

    def redundant(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        acc[(i + j) % p] += a * b
        return CycInt.from_redundant(p, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycInt:
        if k < 0:
            raise ValueError("negative powers are not defined in Z[zeta_p]")
        out, base = one(self.p), self
        while k:
            if k & 1:
                out = out * base
            base, k = base * base, k >> 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycInt):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == CycInt.from_int(self.p, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def to_json(self) -> str:
        return json.dumps(list(self.coeffs), separators=(",", ":"))


def zero(p: int) -> CycInt:
    return CycInt(p, [0] * (p - 1))


def one(p: int) -> CycInt:
    return CycInt.from_int(p, 1)


def root_power(p: int, k: int) -> CycInt:
    """zeta_p^k in canonical form."""
    vec = [0] * p
    vec[k % p] = 1
    return CycInt.from_redundant(p, vec)


def galois_apply(i: int, x: CycInt) -> CycInt:
    """sigma_i(x): substitute zeta -> zeta^i."""
    p = x.p
    i %= p
    if i == 0:
        raise ValueError("sigma_0 is not an automorphism")
    vec = [0] * p
    for k, c in enumerate(x.coeffs):
        vec[(i * k) % p] += c
    return CycInt.from_redundant(p, vec)


def _subgroup(p: int, order: int) -> list[int]:
    g = pow(primitive_root(p), (p - 1) // order, p)
    return sorted({pow(g, j, p) for j in range(order)})


def subgroup_generator(p: int, order: int) -> int:
    """A generator of the unique subgroup of F_p^* of the given order."""
    if (p - 1) % order:
        raise ValueError(f"{order} does not divide p-1 = {p - 1}")
    return pow(primitive_root(p), (p - 1) // order, p)


def _stabilizer_order(x: CycInt) -> int:
    # the fixing group is the subgroup of order D; an order-m generator fixes x iff m | D
    best = 1
    for m in divisors(x.p - 1):
        if m > 1 and galois_apply(subgroup_generator(x.p, m), x) == x:
            best = max(best, m)
    return best


def stabilizer(x: CycInt) -> list[int]:
    """{i in F_p^* : sigma_i(x) = x} as a sorted list of residues."""
    return _subgroup(x.p, _stabilizer_order(x))


@dataclass(frozen=True)
class SubfieldLabel:
    """E_d: the fixed field of the order-d subgroup, of degree (p-1)/d over Q."""

    p: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1 or (self.p - 1) % self.d:
            raise ValueError(f"d = {self.d} does not divide p-1 = {self.p - 1}")

    @property
    def degree(self) -> int:
        return (self.p - 1) // self.d

    def contains(self, other: SubfieldLabel) -> bool:
        """E_self contains E_other iff self.d divides other.d."""
        return other.d % self.d == 0


def field_label(x: CycInt) -> SubfieldLabel:
    """Label d of the subfield Q(x) = E_d."""
    return SubfieldLabel(x.p, _stabilizer_order(x))


def is_rational(x: CycInt) -> bool:
    return all(c == 0 for c in x.coeffs[1:])


def rational_value(x: CycInt) -> int | None:
    return x.coeffs[0] if is_rational(x) else None


def complex_embed(x: CycInt, precision: int = 15) -> mpmath.mpc:
    """Numerical value of x at zeta = exp(2 pi i / p), to ``precision`` digits.

    For display only; no exact decision in this package uses it.
    """
    if precision < 1:
        raise ValueError("precision must be >= 1")
    with mpmath.workdps(precision + 5):
        z = mpmath.exp(2j * mpmath.pi / x.p)
        total = mpmath.mpc(0)
        for k, c in enumerate(x.coeffs):
            if c:
                total += c * z**k
        return total


def cyc_sum(p: int, items: Iterable[CycInt]) -> CycInt:
    acc = [0] * (p - 1)
    for x in items:
        for k, c in enumerate(x.coeffs):
            acc[k] += c
    return CycInt(p, acc)
