"""Finite fields F_{p^r} in a polynomial basis over F_p.

Elements are stored internally as integers ``v = c_0 + c_1 p + ... + c_{r-1} p^{r-1}``
(the "index" of the element); :class:`FieldElement` wraps an index together with
its field.  Fields up to ``DLOG_TABLE_LIMIT`` elements carry full exp/log/trace
tables so that multiplication, discrete logarithms and traces are lookups.
"""

from __future__ import annotations

import json
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from ._arith import factorize, is_prime, prime_divisors

DEFAULT_FIELD_CAP = 2**24
DLOG_TABLE_LIMIT = 2**20


class FieldError(ValueError):
    """Invalid field construction or an operation outside the field's domain."""


# --- polynomials over F_p: lists of ints, constant term first ----------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _poly_mulmod(a, b, f, p) -> list[int]:
    return _poly_mod(_poly_mul(a, b, p), f, p)


def _poly_powmod(a, k: int, f, p) -> list[int]:
    result = _poly_mod([1], f, p)
    base = _poly_mod(a, f, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        k >>= 1
    return result


def _poly_sub(a, b, p) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_p (constant term first)."""
    f = _trim([c % p for c in f])
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**r, f, p), x, p):
        return False
    for q in prime_divisors(r):
        h = _poly_sub(_poly_powmod(x, p ** (r // q), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, r: int) -> list[int]:
    """Monic irreducible of degree r whose lower coefficients, read as a base-p
    integer ``c_0 + c_1 p + ...``, are smallest."""
    for k in range(p**r):
        f = [(k // p**i) % p for i in range(r)] + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# --- the field ---------------------------------------------------------------


class FieldSpec:
    """A concrete model of F_{p^r}: modulus, primitive element and lookup tables.

    Instances are immutable once built; use :func:`build_field` for the canonical
    deterministic choice of modulus and primitive element.
    """

    def __init__(
        self,
        p: int,
        r: int,
        modulus: Sequence[int],
        gamma: Sequence[int] | int,
        *,
        cap: int = DEFAULT_FIELD_CAP,
        table_limit: int = DLOG_TABLE_LIMIT,
    ) -> None:
        if not is_prime(p):
            raise FieldError(f"p must be prime, got {p}")
        if r < 1:
            raise FieldError(f"extension degree must be >= 1, got {r}")
        q = p**r
        if q - 1 > cap:
            raise FieldError(f"field too large: q-1 = {q - 1} exceeds cap {cap}")
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree r")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self._p, self._r, self._q = p, r, q
        self._modulus = tuple(modulus)
        self._powers = tuple(p**i for i in range(r))
        g = gamma if isinstance(gamma, int) else self._encode(gamma)
        if not 0 < g < q:
            raise FieldError("gamma must be a nonzero element")
        self._gamma = g
        for ell in prime_divisors(q - 1):
            if self._pow_poly(g, (q - 1) // ell) == 1:
                raise FieldError(f"gamma is not primitive (order divides {(q - 1) // ell})")

        self._exp = self._log = self._trace = None
        if q <= table_limit:
            self._build_tables()

    # -- encoding

    def _encode(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self._r:
            raise FieldError(f"expected at most {self._r} coefficients")
        return sum((int(c) % self._p) * w for c, w in zip(coeffs, self._powers))

    def _decode(self, v: int) -> list[int]:
        return [(v // w) % self._p for w in self._powers]

    def digits(self, values: np.ndarray) -> np.ndarray:
        """Coefficient matrix (len(values) x r) of an array of element indices."""
        w = np.asarray(self._powers, dtype=np.int64)
        return (np.asarray(values, dtype=np.int64)[:, None] // w) % self._p

    def _undigits(self, digits: np.ndarray) -> np.ndarray:
        return digits @ np.asarray(self._powers, dtype=np.int64)

    # -- tables

    def _build_tables(self) -> None:
        p, r, q = self._p, self._r, self._q
        n = q - 1
        block = min(n, 256)
        exp = np.empty(n, dtype=np.int64)
        cur = 1
        for k in range(block):
            exp[k] = cur
            cur = self._mul_poly(cur, self._gamma)
        if block < n:
            # cur == gamma^block; multiplying by it is an F_p-linear map on digits
            rows = np.array(
                [self._decode(self._mul_poly(cur, p**j)) for j in range(r)], dtype=np.int64
            )
            for start in range(block, n, block):
                prev = self.digits(exp[start - block : start])
                nxt = self._undigits((prev @ rows) % p)
                stop = min(start + block, n)
                exp[start:stop] = nxt[: stop - start]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("exp table does not cover F_q^*")
        # absolute trace is F_p-linear: Tr(sum c_j x^j) = sum c_j Tr(x^j)
        basis_tr = np.array([self._trace_by_definition(p**j) for j in range(r)], dtype=np.int64)
        trace = (self.digits(np.arange(q)) @ basis_tr) % p
        for arr in (exp, log, trace):
            arr.setflags(write=False)
        self._exp, self._log, self._trace = exp, log, trace

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    @property
    def exp_table(self) -> np.ndarray:
        """``exp_table[x] = index of gamma^x`` for ``0 <= x < q-1``."""
        self._require_tables()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        """``log_table[v]`` is the discrete log of element index v (``-1`` for zero)."""
        self._require_tables()
        return self._log

    @property
    def trace_table(self) -> np.ndarray:
        """Absolute trace of every element index."""
        self._require_tables()
        return self._trace

    def _require_tables(self) -> None:
        if self._exp is None:
            raise FieldError(f"no lookup tables for q = {self._q}")

    # -- public attributes

    @property
    def p(self) -> int:
        return self._p

    @property
    def r(self) -> int:
        return self._r

    @property
    def q(self) -> int:
        return self._q

    @property
    def modulus(self) -> tuple[int, ...]:
        return self._modulus

    @property
    def gamma(self) -> FieldElement:
        return FieldElement(self, self._gamma)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        return FieldElement(self, self._encode(coeffs))

    def from_index(self, v: int) -> FieldElement:
        if not 0 <= v < self._q:
            raise FieldError(f"index {v} out of range for q = {self._q}")
        return FieldElement(self, int(v))

    def scalar(self, c: int) -> FieldElement:
        """The prime-field constant ``c mod p``."""
        return FieldElement(self, int(c) % self._p)

    def from_dlog(self, x: int) -> FieldElement:
        """``gamma ** x``."""
        return FieldElement(self, self._pow(self._gamma, x))

    def subfield_generator(self, t: int) -> FieldElement:
        """gamma_t = gamma^((q-1)/(p^t-1)), a primitive element of F_{p^t}."""
        if self._r % t:
            raise FieldError(f"t = {t} does not divide r = {self._r}")
        return self.from_dlog((self._q - 1) // (self._p**t - 1))

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self._q):
            yield FieldElement(self, v)

    def nonzero_elements(self) -> Iterator[FieldElement]:
        for v in range(1, self._q):
            yield FieldElement(self, v)

    # -- index-level arithmetic

    def _add(self, u: int, v: int) -> int:
        p = self._p
        if self._r == 1:
            return (u + v) % p
        return sum(((u // w + v // w) % p) * w for w in self._powers)

    def _neg(self, u: int) -> int:
        return sum(((-(u // w)) % self._p) * w for w in self._powers)

    def _mul_poly(self, u: int, v: int) -> int:
        return self._encode(
            _poly_mulmod(self._decode(u), self._decode(v), self._modulus, self._p)
        )

    def _pow_poly(self, u: int, k: int) -> int:
        return self._encode(_poly_powmod(self._decode(u), k, self._modulus, self._p))

    def _mul(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        if self._exp is not None:
            return int(self._exp[(self._log[u] + self._log[v]) % (self._q - 1)])
        return self._mul_poly(u, v)

    def _pow(self, u: int, k: int) -> int:
        if u == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if k == 0 else 0
        k %= self._q - 1
        if self._exp is not None:
            return int(self._exp[(int(self._log[u]) * k) % (self._q - 1)])
        return self._pow_poly(u, k)

    def _inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("inversion of zero in F_q")
        return self._pow(u, -1)

    def add_array(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Vectorised addition of element indices."""
        if self._r == 1:
            return (np.asarray(u) + np.asarray(v)) % self._p
        return self._undigits((self.digits(u) + self.digits(v)) % self._p)

    def mul_array(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Vectorised multiplication of element indices (requires tables)."""
        self._require_tables()
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        out = self._exp[(self._log[u] + self._log[v]) % (self._q - 1)]
        return np.where((u == 0) | (v == 0), 0, out)

    def _trace_by_definition(self, u: int) -> int:
        total, cur = 0, u
        for _ in range(self._r):
            total = self._add(total, cur)
            cur = self._pow_poly(cur, self._p)
        if total >= self._p:
            raise AssertionError("trace left the prime field")
        return total

    # -- serialisation / identity

    def to_dict(self) -> dict:
        return {
            "p": self._p,
            "r": self._r,
            "modulus": list(self._modulus),
            "gamma": self._decode(self._gamma),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, **kwargs) -> FieldSpec:
        d = json.loads(text)
        return cls(d["p"], d["r"], d["modulus"], d["gamma"], **kwargs)

    def _key(self) -> tuple:
        return (self._p, self._modulus, self._gamma)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self._p}, r={self._r}, modulus={list(self._modulus)})"


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int) -> None:
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._decode(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field._add(self.value, v))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field._add(self.value, self.field._neg(v)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field._mul(self.value, v))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field._mul(self.value, self.field._inv(v)))

    def __pow__(self, k: int) -> FieldElement:
        return FieldElement(self.field, self.field._pow(self.value, int(k)))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and (
                other.field is self.field or other.field == self.field
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.modulus, self.value))

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)})"


# --- module-level operations -------------------------------------------------


def build_field(
    p: int,
    r: int = 1,
    *,
    cap: int = DEFAULT_FIELD_CAP,
    table_limit: int = DLOG_TABLE_LIMIT,
) -> FieldSpec:
    """Deterministically construct F_{p^r}.

    The modulus is the smallest monic irreducible (see :func:`smallest_irreducible`)
    and gamma the primitive element of smallest index.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p must be prime, got {p}")
    if r < 1:
        raise FieldError(f"extension degree must be >= 1, got {r}")
    if p**r - 1 > cap:
        raise FieldError(f"field too large: q-1 = {p**r - 1} exceeds cap {cap}")
    modulus = smallest_irreducible(p, r)
    q = p**r
    qs = [q_ for q_, _ in factorize(q - 1)] if q > 2 else []
    for g in range(1, q):
        coeffs = [(g // p**i) % p for i in range(r)]
        if all(
            _poly_powmod(coeffs, (q - 1) // ell, modulus, p) != [1] for ell in qs
        ):
            return FieldSpec(p, r, modulus, g, cap=cap, table_limit=table_limit)
    raise AssertionError("unreachable: F_q^* is cyclic")


def absolute_trace(a: FieldElement) -> int:
    """Tr(a) = a + a^p + ... + a^(p^(r-1)), returned as an integer in [0, p)."""
    return a.field._trace_by_definition(a.value)


def frobenius(a: FieldElement, s: int = 1) -> FieldElement:
    """a^(p^s)."""
    f = a.field
    return FieldElement(f, f._pow(a.value, f.p ** (s % f.r)))


def subfield_membership(a: FieldElement, t: int) -> bool:
    """True iff a lies in the subfield F_{p^t}, i.e. a^(p^t) = a."""
    if t < 1 or a.field.r % t:
        raise FieldError(f"t = {t} does not divide r = {a.field.r}")
    return frobenius(a, t) == a


def relative_trace(a: FieldElement, e: int, t: int) -> FieldElement:
    """Tr_{F_{p^(et)}/F_{p^t}}(a) = a + a^(p^t) + ... + a^(p^(t(e-1)))."""
    _check_tower(a, e, t)
    total, cur = a.field.zero, a
    for _ in range(e):
        total = total + cur
        cur = frobenius(cur, t)
    return total


def relative_trace_product_form(a: FieldElement, e: int, t: int) -> FieldElement:
    """The same relative trace written as a * (1 + a^(p^t-1) + ... + a^(p^(t(e-1))-1)).

    Only meaningful for nonzero a.
    """
    _check_tower(a, e, t)
    if not a:
        raise ZeroDivisionError("product form needs a != 0")
    p = a.field.p
    bracket = a.field.zero
    for j in range(e):
        bracket = bracket + a ** (p ** (t * j) - 1)
    return a * bracket


def _check_tower(a: FieldElement, e: int, t: int) -> None:
    if e < 1 or t < 1 or a.field.r % (e * t):
        raise FieldError(f"e*t = {e * t} does not divide r = {a.field.r}")
    if not subfield_membership(a, e * t):
        raise FieldError(f"{a!r} is not in F_{a.field.p}^{e * t}")


def discrete_log(a: FieldElement, *, method: str = "auto") -> int:
    """Exponent x in [0, q-2] with gamma^x = a.

    ``method`` is ``"table"``, ``"bsgs"`` or ``"auto"`` (table when available).
    """
    f = a.field
    if not a:
        raise FieldError("discrete log of zero")
    if method == "auto":
        method = "table" if f.has_tables else "bsgs"
    if method == "table":
        return int(f.log_table[a.value])
    if method != "bsgs":
        raise ValueError(f"unknown method {method!r}")
    n = f.q - 1
    m = isqrt(n) + 1
    baby: dict[int, int] = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = f._mul_poly(cur, f._gamma)
    giant = f._pow_poly(f._gamma, n - m % n) if m % n else 1  # gamma^(-m)
    y = a.value
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % n
        y = f._mul_poly(y, giant)
    raise AssertionError("baby-step giant-step failed; gamma not primitive?")


def frobenius_orbit(a: FieldElement) -> frozenset[FieldElement]:
    """{a^(p^s) : 0 <= s < r}."""
    orbit = []
    cur = a
    for _ in range(a.field.r):
        orbit.append(cur)
        cur = frobenius(cur)
    return frozenset(orbit)
