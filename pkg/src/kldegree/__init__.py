"""Exact Kloosterman sums over finite fields and the subfields of Q(zeta_p) they generate."""

from .classifier import (
    Certificate,
    ClassificationRecord,
    Parameters,
    classify_field,
    classify_point,
    coset_membership_dlog,
    derive_parameters,
    minimal_exponent,
    minimal_exponent_membership,
    rational_points,
    verify_against_ground_truth,
    verify_trace_zero,
)
from .cyclotomic import (
    CycInt,
    SubfieldLabel,
    complex_embed,
    field_label,
    galois_apply,
    is_rational,
    root_power,
    stabilizer,
)
from .finite_field import (
    FieldElement,
    FieldError,
    FieldSpec,
    absolute_trace,
    build_field,
    discrete_log,
    frobenius,
    frobenius_orbit,
    relative_trace,
    subfield_membership,
)
from .kloosterman import (
    KlTable,
    check_distinctness,
    distinctness_bounds,
    kloosterman_direct,
    kloosterman_sweep,
    psi,
    read_table_csv,
    table_to_csv,
    table_to_json,
)

__all__ = [
    "Certificate",
    "ClassificationRecord",
    "CycInt",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "KlTable",
    "Parameters",
    "SubfieldLabel",
    "absolute_trace",
    "build_field",
    "check_distinctness",
    "classify_field",
    "classify_point",
    "complex_embed",
    "coset_membership_dlog",
    "derive_parameters",
    "discrete_log",
    "distinctness_bounds",
    "field_label",
    "frobenius",
    "frobenius_orbit",
    "galois_apply",
    "is_rational",
    "kloosterman_direct",
    "kloosterman_sweep",
    "minimal_exponent",
    "minimal_exponent_membership",
    "psi",
    "rational_points",
    "read_table_csv",
    "relative_trace",
    "root_power",
    "stabilizer",
    "subfield_membership",
    "table_to_csv",
    "table_to_json",
    "verify_against_ground_truth",
    "verify_trace_zero",
]

__version__ = "0.1.0"
