"""Predict the subfield of Q(zeta_p) generated by Kl_n(q, a) from the position of a.

Notation: d = gcd(n+1, p-1), R = gcd((p-1)/d, r).  For e | R, e > 1 and t | r/e, the
point a = gamma^x carries an (e, t, u) certificate when

    x = u (q-1) / (e (p^t-1))  (mod (q-1)/(p^t-1)),   1 <= u < e,  gcd(u, e) = 1,

i.e. a lies in the coset  gamma^(u (q-1)/(e (p^t-1))) * F_{p^t}^*.  A certificate at
level e puts Kl_n(q, a) in E_{de}; when the field's values are distinct up to
Frobenius the largest certified e gives the generated field exactly.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field as dc_field
from math import gcd
from typing import Iterable, TextIO

from ._arith import divisors, is_prime
from .cyclotomic import field_label
from .finite_field import (
    FieldElement,
    FieldError,
    FieldSpec,
    absolute_trace,
    discrete_log,
    relative_trace,
    subfield_membership,
)
from .kloosterman import DistinctnessReport, KlTable, distinctness_bounds

log = logging.getLogger(__name__)

IFF = "iff"
IF_ONLY = "if-only"


@dataclass(frozen=True)
class Parameters:
    p: int
    r: int
    n: int
    d: int
    R: int

    @property
    def max_degree(self) -> int:
        return (self.p - 1) // self.d

    @property
    def note(self) -> str | None:
        if self.R == 1:
            return "R = 1: under distinctness every nonzero-point sum generates E_d"
        return None


def derive_parameters(p: int, r: int, n: int) -> Parameters:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if r < 1 or n < 1:
        raise ValueError("r and n must be positive")
    d = gcd(n + 1, p - 1)
    return Parameters(p, r, n, d, gcd((p - 1) // d, r))


def _check_params(params: Parameters, field: FieldSpec) -> None:
    if (params.p, params.r) != (field.p, field.r):
        raise ValueError("parameters and field disagree on (p, r)")


def c_rt(p: int, r: int, t: int) -> int:
    """(p^r - 1) / (p^t - 1), the index of F_{p^t}^* in F_{p^r}^*."""
    return (p**r - 1) // (p**t - 1)


@dataclass(frozen=True)
class Certificate:
    e: int
    t: int
    u: int
    coset_rep_dlog: int


def coset_membership_dlog(a: FieldElement, e: int, t: int) -> int | None:
    """The u placing a in gamma^(u (q-1)/(e(p^t-1))) F_{p^t}^*, or None."""
    f = a.field
    if not a:
        raise ValueError("a must be nonzero")
    if e < 2 or t < 1 or f.r % (e * t) or (f.p - 1) % e:
        raise ValueError(f"need e > 1, e | p-1 and e*t | r; got e={e}, t={t}")
    C = c_rt(f.p, f.r, t)
    step = C // e
    x = discrete_log(a) % C
    if x % step:
        return None
    u = x // step
    return u if gcd(u, e) == 1 else None


def minimal_exponent(a: FieldElement, t: int, *, brute: bool = False) -> int:
    """Smallest k >= 1 with a^k in F_{p^t}.

    The minimal k is the order of a in F_q^* / F_{p^t}^*, so it divides
    (q-1)/(p^t-1); only those divisors are tried unless ``brute`` is set.
    """
    f = a.field
    if not a:
        raise ValueError("a must be nonzero")
    candidates = range(1, f.q) if brute else divisors(c_rt(f.p, f.r, t))
    for k in candidates:
        if subfield_membership(a**k, t):
            return k
    raise AssertionError("a^(q-1) = 1 always lies in the subfield")


def minimal_exponent_membership(a: FieldElement, e: int, t: int, *, brute: bool = False) -> bool:
    return minimal_exponent(a, t, brute=brute) == e


def certificates(params: Parameters, a: FieldElement) -> list[Certificate]:
    """Every (e, t, u) certificate of a, ordered by decreasing e then increasing t."""
    _check_params(params, a.field)
    out = []
    q, p = a.field.q, params.p
    for e in reversed(divisors(params.R)):
        if e == 1:
            continue
        for t in divisors(params.r // e):
            u = coset_membership_dlog(a, e, t)
            if u is not None:
                out.append(Certificate(e, t, u, u * (q - 1) // (e * (p**t - 1))))
    return out


@dataclass
class ClassificationRecord:
    a_dlog: int
    predicted_de: int
    certificate: Certificate | None
    mode: str
    actual_de: int | None = None
    all_e: tuple[int, ...] = ()

    @property
    def e(self) -> int:
        return self.certificate.e if self.certificate else 1

    @property
    def contained(self) -> bool | None:
        """Predicted field contains the true one (d*e divides the actual label)."""
        if self.actual_de is None:
            return None
        return self.actual_de % self.predicted_de == 0

    @property
    def exact(self) -> bool | None:
        if self.actual_de is None:
            return None
        return self.actual_de == self.predicted_de

    @property
    def passed(self) -> bool | None:
        return self.exact if self.mode == IFF else self.contained

    @property
    def chain_ok(self) -> bool:
        """All certified levels divide the largest one."""
        return all(self.e % e == 0 for e in self.all_e)


def resolve_mode(params: Parameters, distinctness: DistinctnessReport | None = None) -> str:
    """``iff`` when distinctness is established, else ``if-only``.

    An exhaustive check, when supplied, is decisive.  Without one the stated
    n = 1, r <= 4 guarantee is accepted (it fails for several small p, so callers
    should run the check whenever the field is small enough to sweep).
    """
    if distinctness is not None:
        return IFF if distinctness.holds else IF_ONLY
    return IFF if distinctness_bounds(params.p, params.r, params.n).guaranteed else IF_ONLY


def classify_point(
    params: Parameters, a: FieldElement, mode: str | None = None
) -> ClassificationRecord:
    """Largest e | R with a certificate; e = 1 (maximal degree) when none exists."""
    if not a:
        raise ValueError("classification covers a in F_q^* only")
    mode = mode or resolve_mode(params)
    certs = certificates(params, a)
    best = certs[0] if certs else None
    e = best.e if best else 1
    return ClassificationRecord(
        a_dlog=discrete_log(a),
        predicted_de=params.d * e,
        certificate=best,
        mode=mode,
        all_e=tuple(sorted({c.e for c in certs})),
    )


def classify_field(
    params: Parameters,
    field: FieldSpec,
    *,
    mode: str | None = None,
    table: KlTable | None = None,
) -> list[ClassificationRecord]:
    """Classify every nonzero point in ascending dlog order, attaching ground truth
    from ``table`` when given."""
    _check_params(params, field)
    mode = mode or resolve_mode(params)
    records = []
    for x in range(field.q - 1):
        rec = classify_point(params, field.from_dlog(x), mode)
        if table is not None:
            rec.actual_de = field_label(table.at_dlog(x)).d
        records.append(rec)
    return records


@dataclass
class RationalPoints:
    points: list[FieldElement]
    reason: str | None
    exhaustive: bool


def rational_points(
    params: Parameters, field: FieldSpec, distinctness: DistinctnessReport | None = None
) -> RationalPoints:
    """Points a != 0 whose sum is forced into Q, sorted by discrete log.

    Exhaustive (no other rational values exist) when distinctness holds.
    """
    _check_params(params, field)
    exhaustive = resolve_mode(params, distinctness) == IFF
    k0 = params.max_degree
    if params.r % k0:
        return RationalPoints([], f"(p-1)/d = {k0} does not divide r = {params.r}", exhaustive)
    ts = divisors(params.d * params.r // (params.p - 1))
    pts = [
        a for a in (field.from_dlog(x) for x in range(field.q - 1))
        if any(minimal_exponent(a, t) == k0 for t in ts)
    ]
    return RationalPoints(pts, None, exhaustive)


def verify_trace_zero(params: Parameters, record: ClassificationRecord, field: FieldSpec) -> bool:
    """A certified point has zero relative trace to F_{p^t} and zero absolute trace."""
    if record.certificate is None:
        raise ValueError("record has no certificate")
    e, t = record.certificate.e, record.certificate.t
    a = field.from_dlog(record.a_dlog)
    try:
        ok = not relative_trace(a, e, t) and absolute_trace(a) == 0
    except FieldError:
        ok = False
    if not ok:
        log.error("trace-zero violated at a = gamma^%d with (e, t) = (%d, %d)", record.a_dlog, e, t)
    return ok


@dataclass
class VerificationReport:
    params: Parameters
    mode: str
    records: list[ClassificationRecord]
    failures: dict[str, list[int]] = dc_field(default_factory=dict)
    counts: dict[str, tuple[int, int]] = dc_field(default_factory=dict)
    informational: frozenset[str] = frozenset()

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def summary_lines(self) -> list[str]:
        out = []
        for name, (passed, total) in self.counts.items():
            if name in self.informational:
                out.append(f"{name}: {passed}/{total} INFO")
                continue
            status = "PASS" if not self.failures.get(name) else "FAIL"
            line = f"{name}: {passed}/{total} {status}"
            bad = self.failures.get(name)
            if bad:
                shown = ", ".join(str(x) for x in bad[:10])
                line += f" (a_dlog: {shown}{', ...' if len(bad) > 10 else ''})"
            out.append(line)
        return out


def verify_against_ground_truth(
    params: Parameters,
    table: KlTable,
    distinctness: DistinctnessReport | None = None,
) -> VerificationReport:
    """Compare predictions with the field each tabulated value actually generates."""
    field = table.field
    if table.n != params.n:
        raise ValueError("table dimension differs from parameters")
    mode = resolve_mode(params, distinctness)
    records = classify_field(params, field, mode=mode, table=table)
    checks: dict[str, list[bool]] = {
        "containment": [],
        "exact_match": [],
        "max_degree_nonzero_trace": [],
        "trace_zero": [],
        "certificate_chain": [],
    }
    if mode == IFF:
        checks["iff_prediction"] = []
    failures: dict[str, list[int]] = {k: [] for k in checks}

    def record(name: str, ok: bool, x: int) -> None:
        checks[name].append(ok)
        if not ok:
            failures[name].append(x)

    for rec in records:
        x = rec.a_dlog
        record("containment", bool(rec.contained), x)
        record("exact_match", bool(rec.exact), x)
        if mode == IFF:
            record("iff_prediction", bool(rec.exact), x)
        if absolute_trace(field.from_dlog(x)) != 0:
            record("max_degree_nonzero_trace", rec.actual_de == params.d, x)
        if rec.certificate is not None:
            record("trace_zero", verify_trace_zero(params, rec, field), x)
        record("certificate_chain", rec.chain_ok, x)

    # outside iff mode only containment is promised, so exact matches are reported, not judged
    informational = frozenset() if mode == IFF else frozenset({"exact_match"})
    for name in informational:
        failures[name] = []
    counts = {k: (sum(v), len(v)) for k, v in checks.items()}
    return VerificationReport(params, mode, records, failures, counts, informational)


def equivalence_failures(params: Parameters, field: FieldSpec) -> list[tuple[int, int, int]]:
    """(x, e, t) where coset membership and the minimal-exponent test disagree."""
    _check_params(params, field)
    bad = []
    for x in range(field.q - 1):
        a = field.from_dlog(x)
        for e in divisors(params.R):
            if e == 1:
                continue
            for t in divisors(params.r // e):
                lhs = coset_membership_dlog(a, e, t) is not None
                if lhs != minimal_exponent_membership(a, e, t):
                    bad.append((x, e, t))
    return bad


# --- reports ------------------------------------------------------------------

REPORT_COLUMNS = ["a_dlog", "predicted_de", "e", "t", "u", "mode", "actual_de", "pass"]


def _row(rec: ClassificationRecord, list_all_e: bool) -> dict:
    c = rec.certificate
    row = {
        "a_dlog": rec.a_dlog,
        "predicted_de": rec.predicted_de,
        "e": rec.e,
        "t": c.t if c else None,
        "u": c.u if c else None,
        "mode": rec.mode,
        "actual_de": rec.actual_de,
        "pass": rec.passed,
    }
    if list_all_e:
        row["all_e"] = list(rec.all_e)
    return row


def write_report_csv(records: Iterable[ClassificationRecord], out: TextIO, *, list_all_e: bool = False) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(REPORT_COLUMNS + (["all_e"] if list_all_e else []))
    for rec in records:
        row = _row(rec, list_all_e)
        cells = ["" if row[k] is None else str(row[k]).lower() if isinstance(row[k], bool) else row[k]
                 for k in REPORT_COLUMNS]
        if list_all_e:
            cells.append(" ".join(str(e) for e in row["all_e"]))
        w.writerow(cells)


def report_to_csv(records: Iterable[ClassificationRecord], **kwargs) -> str:
    buf = io.StringIO()
    write_report_csv(records, buf, **kwargs)
    return buf.getvalue()


def report_to_json(records: Iterable[ClassificationRecord], summary: dict | None = None,
                   *, list_all_e: bool = False) -> str:
    doc = {"rows": [_row(r, list_all_e) for r in records]}
    if summary is not None:
        doc = {"summary": summary, **doc}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def parameters_dict(params: Parameters) -> dict:
    return asdict(params)
