"""Small exact integer helpers shared across modules (trial division is enough here)."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as ``((prime, exponent), ...)``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            k = 0
            while n % f == 0:
                n //= f
                k += 1
            out.append((f, k))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [q for q, _ in factorize(n)]


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n):
        divs = [d * q**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    out = n
    for q, _ in factorize(n):
        out = out // q * (q - 1)
    return out


def multiplicative_order(g: int, m: int) -> int:
    """Order of ``g`` in (Z/mZ)^*."""
    if gcd(g, m) != 1:
        raise ValueError(f"{g} is not a unit mod {m}")
    if m == 1:
        return 1
    order = euler_phi(m)
    for q, _ in factorize(order):
        while order % q == 0 and pow(g, order // q, m) == 1:
            order //= q
    return order


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of F_p^*."""
    if p == 2:
        return 1
    qs = prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")
