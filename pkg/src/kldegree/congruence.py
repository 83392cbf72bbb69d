"""The exponent congruences behind the coset classification, solved independently.

For a = gamma^x, the condition i^(n+1) a = a^(p^s) with i of order e*d in F_p^*
becomes the linear congruence

    (p^s - 1) x = ((n+1)/d) (p^r - 1)/e   (mod p^r - 1).

This module solves it by plain gcd reduction for each s, and compares the union over
all s with gcd(r, s) = t against the closed-form coset exponent set.  Nothing here
touches field arithmetic, so it serves as a second witness for the classifier.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from math import gcd
from typing import Iterator, TextIO

from ._arith import divisors, euler_phi, factorize


@dataclass(frozen=True)
class CongruenceInstance:
    p: int
    r: int
    n: int
    d: int
    e: int
    s: int

    def __post_init__(self) -> None:
        if not 0 < self.s < self.r:
            raise ValueError(f"need 0 < s < r, got s={self.s}, r={self.r}")
        if self.e < 2:
            raise ValueError("e = 1 is the trivial case and is excluded")
        if (self.n + 1) % self.d or (self.p - 1) % self.d:
            raise ValueError("d must divide both n+1 and p-1")
        if gcd(self.e, (self.n + 1) // self.d) != 1:
            raise ValueError("gcd(e, (n+1)/d) must be 1")

    @classmethod
    def make(cls, p: int, r: int, n: int, e: int, s: int) -> CongruenceInstance:
        return cls(p, r, n, gcd(n + 1, p - 1), e, s)

    @property
    def t(self) -> int:
        return gcd(self.r, self.s)

    @property
    def c_st(self) -> int:
        return (self.p**self.s - 1) // (self.p**self.t - 1)

    @property
    def c_rt(self) -> int:
        return (self.p**self.r - 1) // (self.p**self.t - 1)

    @property
    def modulus(self) -> int:
        return self.p**self.r - 1

    @property
    def rhs(self) -> int:
        # (p^r - 1)/e need not be an integer when e does not divide p^r - 1
        num = (self.n + 1) // self.d * self.modulus
        if num % self.e:
            raise ValueError("right-hand side is not integral")
        return num // self.e


def lemma4_lift(n: int, m: int, y: int) -> int:
    """A unit x mod n with x = y (mod m), by scanning y, y+m, ..., y+(Q-1)m.

    Here n = M Q where M collects the prime powers of n whose primes divide m.
    """
    if m < 1 or n % m:
        raise ValueError(f"m = {m} does not divide n = {n}")
    if gcd(y, m) != 1:
        raise ValueError(f"y = {y} is not a unit mod {m}")
    M = 1
    for ell, k in factorize(n):
        if m % ell == 0:
            M *= ell**k
    Q = n // M
    for i in range(Q):
        x = y + i * m
        if gcd(x, n) == 1:
            return x % n if n > 1 else x
    raise AssertionError("unreachable: the scan always meets a unit")


def solvability(inst: CongruenceInstance) -> bool:
    """Criterion: e | gcd((p-1)/d, r/t)."""
    return gcd((inst.p - 1) // inst.d, inst.r // inst.t) % inst.e == 0


def _solve_linear(a: int, b: int, m: int) -> list[int]:
    """All x in [0, m) with a x = b (mod m)."""
    g = gcd(a, m)
    if b % g:
        return []
    m_g = m // g
    x0 = (b // g) * pow(a // g, -1, m_g) % m_g if m_g > 1 else 0
    return [x0 + k * m_g for k in range(g)]


def solve_congruence_4(inst: CongruenceInstance) -> set[int]:
    """Complete solution set mod p^r - 1 (empty when unsolvable)."""
    m = inst.modulus
    if (inst.n + 1) // inst.d * m % inst.e:
        # e does not divide the right-hand side numerator; no integral congruence
        return set()
    return set(_solve_linear(inst.p**inst.s - 1, inst.rhs, m))


def reduced_solution(inst: CongruenceInstance) -> int | None:
    """The solution of the reduced congruence mod C_{r,t} written via s' and s*:

    x = ((n+1)/d) s* C_{r,t} / e  (mod C_{r,t}),  s' s* = 1 (mod e).
    """
    if not solvability(inst):
        return None
    s_prime = inst.s // inst.t
    s_star = pow(s_prime, -1, inst.e)
    C = inst.c_rt
    return (inst.n + 1) // inst.d * s_star * (C // inst.e) % C


def closed_form_solution_set(p: int, r: int, n: int, d: int, e: int, t: int) -> set[int]:
    """{u (q-1)/(e(p^t-1)) + v (q-1)/(p^t-1) : gcd(u, e) = 1, 0 <= v < p^t - 1}."""
    if e < 2 or t < 1 or r % (e * t) or ((p - 1) // d) % e:
        raise ValueError(f"need e | (p-1)/d and t | r/e; got e={e}, t={t}")
    C = (p**r - 1) // (p**t - 1)
    step = C // e
    return {
        u * step + v * C
        for u in range(1, e)
        if gcd(u, e) == 1
        for v in range(p**t - 1)
    }


def cst_residue_identity(p: int, e: int, s: int, t: int) -> tuple[int, int]:
    """Return (C_{s,t}, s/t) after checking C_{s,t} = s/t (mod e) when p = 1 (mod e)."""
    if (p - 1) % e:
        raise ValueError(f"p = {p} is not 1 mod e = {e}")
    if t < 1 or s % t:
        raise ValueError(f"t = {t} does not divide s = {s}")
    c = (p**s - 1) // (p**t - 1)
    if (c - s // t) % e:
        raise ArithmeticError(f"C_{{{s},{t}}} = {c} is not {s // t} mod {e}")
    return c, s // t


def s_values(r: int, t: int) -> list[int]:
    """s in [1, r-1] with gcd(r, s) = t."""
    return [s for s in range(1, r) if gcd(r, s) == t]


@dataclass(frozen=True)
class UnionCheck:
    p: int
    r: int
    n: int
    e: int
    t: int
    union_size: int
    closed_form_size: int
    equal: bool


def union_identity(p: int, r: int, n: int, e: int, t: int) -> UnionCheck:
    d = gcd(n + 1, p - 1)
    union: set[int] = set()
    for s in s_values(r, t):
        union |= solve_congruence_4(CongruenceInstance(p, r, n, d, e, s))
    closed = closed_form_solution_set(p, r, n, d, e, t)
    return UnionCheck(p, r, n, e, t, len(union), len(closed), union == closed)


def admissible_pairs(p: int, r: int, n: int) -> Iterator[tuple[int, int]]:
    """(e, t) with e > 1, e | gcd((p-1)/d, r) and t | r/e."""
    d = gcd(n + 1, p - 1)
    for e in divisors(gcd((p - 1) // d, r)):
        if e > 1:
            for t in divisors(r // e):
                yield e, t


def verification_grid(
    primes=(5, 7, 11, 13), max_r: int = 6, max_n: int = 4
) -> list[UnionCheck]:
    return [
        union_identity(p, r, n, e, t)
        for p in primes
        for r in range(1, max_r + 1)
        for n in range(1, max_n + 1)
        for e, t in admissible_pairs(p, r, n)
    ]


def write_grid_csv(rows: list[UnionCheck], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["p", "r", "n", "e", "t", "union_size", "closed_form_size", "equal"])
    for c in rows:
        w.writerow([c.p, c.r, c.n, c.e, c.t, c.union_size, c.closed_form_size, str(c.equal).lower()])


def phi_count_matches(r: int, t: int) -> bool:
    """Number of s with gcd(r, s) = t equals phi(r/t) (s = 0 standing in for s = r when t = r)."""
    count = len(s_values(r, t)) + (1 if t == r else 0)
    return count == euler_phi(r // t)
