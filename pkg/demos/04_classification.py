"""
Which field does Kl_n(q, a) generate?
=====================================

With d = gcd(n+1, p-1) every value lies in E_d.  A point a = gamma^x drops to a
smaller field E_{de} when x sits in a particular coset of F_{p^t}^*.  Here the
prediction is set beside the field each tabulated value actually generates.
"""

from collections import Counter

from kldegree import (
    build_field,
    check_distinctness,
    classify_field,
    derive_parameters,
    discrete_log,
    kloosterman_sweep,
    rational_points,
    verify_against_ground_truth,
)

P = derive_parameters(7, 3, 1)
F = build_field(7, 3)
T = kloosterman_sweep(F, 1)
print(P)

records = classify_field(P, F, table=T)
print("predicted labels:", Counter(r.predicted_de for r in records))
print("actual labels:   ", Counter(r.actual_de for r in records))

rp = rational_points(P, F, check_distinctness(T))
print("rational points (dlogs):", [discrete_log(a) for a in rp.points])

rep = verify_against_ground_truth(P, T, check_distinctness(T))
print("\n".join(rep.summary_lines()))

# when values collide the prediction only bounds the field from above
P = derive_parameters(5, 4, 1)
T = kloosterman_sweep(build_field(5, 4), 1)
rep = verify_against_ground_truth(P, T, check_distinctness(T))
print(f"\nF_625 ({rep.mode}):")
print("\n".join(rep.summary_lines()))
