"""Naive reference model of F_{p^r} and Kloosterman sums, sharing no code with the package.

Elements are coefficient tuples; the modulus is the *largest* monic irreducible of
degree r (the package picks the smallest), inverses are found by search, and traces
by repeated multiplication.  Only isomorphism invariants (value multisets, counts)
should be compared against the package.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product


class NaiveField:
    def __init__(self, p: int, r: int) -> None:
        self.p, self.r = p, r
        self.zero = (0,) * r
        self.one = (1,) + (0,) * (r - 1)
        self.elements = list(product(range(p), repeat=r))
        self.modulus = self._largest_irreducible()

    def _reduce(self, coeffs):
        p, r, f = self.p, self.r, self.modulus
        c = list(coeffs)
        for k in range(len(c) - 1, r - 1, -1):
            lead = c[k] % p
            if lead:
                for i in range(r + 1):
                    c[k - r + i] -= lead * f[i]
        return tuple(x % p for x in c[:r])

    def mul(self, a, b):
        out = [0] * (2 * self.r - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._reduce(out)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _largest_irreducible(self):
        p, r = self.p, self.r
        if r == 1:
            return (0, 1)
        for low in reversed(list(product(range(p), repeat=r))):
            self.modulus = tuple(reversed(low)) + (1,)
            nz = [a for a in self.elements if a != self.zero]
            # a field iff there are no zero divisors
            if all(self.mul(a, b) != self.zero for a in nz for b in nz):
                return self.modulus
        raise AssertionError("no irreducible found")

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def inverse(self, a):
        return next(b for b in self.elements if self.mul(a, b) == self.one)

    def trace(self, a):
        total, cur = self.zero, a
        for _ in range(self.r):
            total = self.add(total, cur)
            cur = self.power(cur, self.p)
        assert all(c == 0 for c in total[1:])
        return total[0]


@lru_cache(maxsize=None)
def naive_kloosterman_values(p: int, r: int, n: int) -> dict:
    """{a: power-basis coefficients of Kl_n(q, a)} for every nonzero a."""
    F = NaiveField(p, r)
    tr = {a: F.trace(a) for a in F.elements}
    nz = [a for a in F.elements if a != F.zero]
    inv = {a: F.inverse(a) for a in nz}
    out = {}
    for a in nz:
        counts = [0] * p
        for xs in product(nz, repeat=n):
            s, prod_ = F.zero, F.one
            for x in xs:
                s = F.add(s, x)
                prod_ = F.mul(prod_, x)
            counts[tr[F.add(s, F.mul(a, inv[prod_]))]] += 1
        out[a] = tuple(c - counts[-1] for c in counts[:-1])
    return out


def naive_value_multiset(p: int, r: int, n: int) -> Counter:
    return Counter(naive_kloosterman_values(p, r, n).values())


def naive_orbit_count(p: int, r: int) -> int:
    F = NaiveField(p, r)
    nz = [a for a in F.elements if a != F.zero]
    return len({frozenset(F.power(a, p**s) for s in range(r)) for a in nz})
