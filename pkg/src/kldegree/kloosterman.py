"""n-dimensional Kloosterman sums Kl_n(q, a) as exact elements of Z[zeta_p].

Two independent routes are provided:

* :func:`kloosterman_direct` enumerates every tuple (x_1, ..., x_n) of F_q^* and
  evaluates psi(x_1 + ... + x_n + a / (x_1 ... x_n)) literally.
* :func:`kloosterman_sweep` computes all q values at once through the recursion
  T_0(a) = psi(a),  T_m(a) = sum_{x != 0} psi(x) T_{m-1}(a / x),  Kl_n = T_n.

During the sweep a value is kept as a length-p vector of counts (the coefficient
of zeta^k is the number of tuples whose argument has trace k).  Writing a = gamma^alpha
turns each level into a cyclic convolution over Z/(q-1) x Z/p.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Iterator, TextIO

import numpy as np

from .cyclotomic import CycInt, complex_embed, galois_apply, root_power
from .finite_field import (
    FieldElement,
    FieldSpec,
    absolute_trace,
    discrete_log,
    frobenius,
    frobenius_orbit,
)

DEFAULT_TERM_CAP = 10**8


@dataclass(frozen=True)
class KlTable:
    """All values a -> Kl_n(q, a); nonzero points are keyed by discrete log."""

    field: FieldSpec
    n: int
    zero_value: CycInt
    by_dlog: tuple[CycInt, ...]

    def __post_init__(self) -> None:
        if len(self.by_dlog) != self.field.q - 1:
            raise ValueError(
                f"incomplete table: {len(self.by_dlog)} nonzero entries for q = {self.field.q}"
            )

    def __len__(self) -> int:
        return self.field.q

    def __getitem__(self, a: FieldElement) -> CycInt:
        if not a:
            return self.zero_value
        return self.by_dlog[discrete_log(a)]

    def at_dlog(self, x: int) -> CycInt:
        return self.by_dlog[x % (self.field.q - 1)]

    def items(self) -> Iterator[tuple[FieldElement, CycInt]]:
        """Zero first, then nonzero points in increasing discrete log."""
        yield self.field.zero, self.zero_value
        for x, v in enumerate(self.by_dlog):
            yield self.field.from_dlog(x), v


def psi(a: FieldElement) -> CycInt:
    """Canonical additive character zeta_p^Tr(a)."""
    return root_power(a.field.p, absolute_trace(a))


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension n must be >= 1, got {n}")


def kloosterman_direct(
    field: FieldSpec, n: int, a: FieldElement, *, cap: int = DEFAULT_TERM_CAP
) -> CycInt:
    """Kl_n(q, a) by enumerating all (q-1)^n tuples."""
    _check_n(n)
    p, q = field.p, field.q
    if (q - 1) ** n > cap:
        raise ValueError(f"(q-1)^n = {(q - 1) ** n} terms exceeds cap {cap}")
    N = q - 1
    last = np.arange(1, q, dtype=np.int64)
    inv_last_log = (-field.log_table[last]) % N
    counts = np.zeros(p, dtype=object)
    for prefix in product(range(1, q), repeat=n - 1):
        s, prod_ = 0, 1
        for x in prefix:
            s = field._add(s, x)
            prod_ = field._mul(prod_, x)
        sums = field.add_array(np.full(N, s, dtype=np.int64), last)
        if a:
            # a / (prod_ * x_n)
            logs = (field.log_table[a.value] - field.log_table[prod_] + inv_last_log) % N
            quo = field.exp_table[logs]
        else:
            quo = np.zeros(N, dtype=np.int64)
        args = field.add_array(sums, quo)
        counts += np.bincount(field.trace_table[args], minlength=p).astype(object)
    return CycInt.from_redundant(p, counts.tolist())


def _count_dtype(q: int, n: int):
    # counts never exceed (q-1)^n, so int64 is exact below this bound
    return np.int64 if (q - 1) ** n < 2**62 else object


def kloosterman_sweep(field: FieldSpec, n: int) -> KlTable:
    """Every Kl_n(q, a), a in F_q, via the level-by-level recursion."""
    _check_n(n)
    p, q = field.p, field.q
    N = q - 1
    dtype = _count_dtype(q, n)
    tr = np.asarray(field.trace_table[field.exp_table], dtype=np.int64)  # Tr(gamma^beta)
    idx = np.arange(N)

    # level 1: T_1(gamma^alpha) has one term per beta, landing at Tr(gamma^beta) + Tr(gamma^(alpha-beta))
    level = np.zeros((N, p), dtype=dtype)
    for beta in range(N):
        level[idx, (tr[beta] + tr[(idx - beta) % N]) % p] += 1
    for _ in range(2, n + 1):
        nxt = np.zeros((N, p), dtype=dtype)
        for beta in range(N):
            nxt += np.roll(level[(idx - beta) % N], int(tr[beta]), axis=1)
        level = nxt

    hist = np.bincount(tr, minlength=p)
    zero_counts = [1] + [0] * (p - 1)
    for _ in range(n):
        zero_counts = [
            sum(int(hist[j]) * zero_counts[(k - j) % p] for j in range(p)) for k in range(p)
        ]
    values = tuple(CycInt.from_redundant(p, [int(c) for c in row]) for row in level)
    return KlTable(field, n, CycInt.from_redundant(p, zero_counts), values)


# --- distinctness -------------------------------------------------------------


@dataclass
class DistinctnessReport:
    holds: bool
    violations: list[tuple[FieldElement, FieldElement]] = dc_field(default_factory=list)


def check_distinctness(table: KlTable) -> DistinctnessReport:
    """Check that equal values on F_q^* only occur along Frobenius orbits.

    Every pair (a, b) with Kl(a) = Kl(b) and disjoint orbits is listed.
    """
    groups: dict[CycInt, list[int]] = {}
    for x, v in enumerate(table.by_dlog):
        groups.setdefault(v, []).append(x)
    f = table.field
    violations = []
    for xs in groups.values():
        if len(xs) < 2:
            continue
        for x, y in combinations(xs, 2):
            a, b = f.from_dlog(x), f.from_dlog(y)
            if b not in frobenius_orbit(a):
                violations.append((a, b))
    return DistinctnessReport(not violations, violations)


@dataclass(frozen=True)
class BoundsReport:
    p: int
    r: int
    n: int
    fischer_threshold: int
    fischer_bound_met: bool
    wan_threshold: int
    wan_bound_met: bool
    guaranteed: bool
    wan_advisory_only: bool = True

    def lines(self) -> list[str]:
        return [
            f"fischer: p > {self.fischer_threshold}: {self.fischer_bound_met}",
            f"wan (advisory, extra side condition unchecked): p >= {self.wan_threshold}: "
            f"{self.wan_bound_met}",
            f"guaranteed (n = 1 and r <= 4): {self.guaranteed}",
        ]


def distinctness_bounds(p: int, r: int, n: int) -> BoundsReport:
    """Which known sufficient conditions for distinctness apply.

    Never concludes that distinctness fails; only :func:`check_distinctness` can.
    """
    fischer = (2 * (n + 1) ** (2 * r) + 1) ** 2
    wan = (r - 1) * (n + 1) + 2
    return BoundsReport(
        p, r, n,
        fischer_threshold=fischer,
        fischer_bound_met=p > fischer,
        wan_threshold=wan,
        wan_bound_met=p >= wan,
        guaranteed=(n == 1 and r <= 4),
    )


# --- structural checks --------------------------------------------------------


def equivariance_failures(table: KlTable) -> list[tuple[int, FieldElement]]:
    """Pairs (i, a) where sigma_i(Kl(a)) != Kl(i^(n+1) a)."""
    f, n = table.field, table.n
    bad = []
    for i in range(1, f.p):
        c = f.scalar(pow(i, n + 1, f.p))
        for a, v in table.items():
            if galois_apply(i, v) != table[c * a]:
                bad.append((i, a))
    return bad


def frobenius_failures(table: KlTable) -> list[tuple[int, FieldElement]]:
    """Pairs (s, a) where Kl(a^(p^s)) != Kl(a)."""
    bad = []
    for a, v in table.items():
        for s in range(1, table.field.r):
            if table[frobenius(a, s)] != v:
                bad.append((s, a))
    return bad


# --- interchange --------------------------------------------------------------


def _header(p: int, extra: bool) -> list[str]:
    return ["a"] + [f"c{k}" for k in range(p - 1)] + (["approx"] if extra else [])


def write_table_csv(table: KlTable, out: TextIO, *, embed_precision: int | None = None) -> None:
    """One row per point: ``a`` is ``zero`` or the discrete log, then coefficients."""
    p = table.field.p
    w = csv.writer(out, lineterminator="\n")
    w.writerow(_header(p, embed_precision is not None))
    rows = [("zero", table.zero_value)] + list(enumerate(table.by_dlog))
    for key, v in rows:
        row = [key, *v.coeffs]
        if embed_precision is not None:
            z = complex_embed(v, embed_precision)
            row.append(f"{float(z.real):.{embed_precision}g}{float(z.imag):+.{embed_precision}g}j")
        w.writerow(row)


def table_to_csv(table: KlTable, **kwargs) -> str:
    buf = io.StringIO()
    write_table_csv(table, buf, **kwargs)
    return buf.getvalue()


def read_table_csv(source: TextIO, field: FieldSpec, n: int) -> KlTable:
    p = field.p
    reader = csv.reader(source)
    header = next(reader)
    if header[: p] != _header(p, False):
        raise ValueError(f"unexpected header {header}")
    zero_value = None
    values: dict[int, CycInt] = {}
    for row in reader:
        if not row:
            continue
        v = CycInt(p, [int(c) for c in row[1:p]])
        if row[0] == "zero":
            zero_value = v
        else:
            values[int(row[0])] = v
    if zero_value is None or sorted(values) != list(range(field.q - 1)):
        raise ValueError("table file is incomplete")
    return KlTable(field, n, zero_value, tuple(values[x] for x in range(field.q - 1)))


def table_to_json(table: KlTable) -> str:
    rows = [{"a": "zero", "coeffs": list(table.zero_value.coeffs)}]
    rows += [{"a": x, "coeffs": list(v.coeffs)} for x, v in enumerate(table.by_dlog)]
    doc = {"field": table.field.to_dict(), "n": table.n, "values": rows}
    return json.dumps(doc, separators=(",", ":")) + "\n"
