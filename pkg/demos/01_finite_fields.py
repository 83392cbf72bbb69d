"""
Arithmetic in F_{p^r}
=====================

Elements are integers v = c_0 + c_1 p + ... + c_{r-1} p^{r-1}, read as the polynomial
c_0 + c_1 x + ... in a fixed basis.  The modulus and the primitive element gamma are
picked deterministically, so every run sees the same field.
"""

import numpy as np

from kldegree import absolute_trace, build_field, discrete_log, frobenius_orbit

F = build_field(5, 2)
print(F.to_json())

# gamma generates the multiplicative group
g = F.gamma
print("gamma =", g.coeffs, " gamma^24 == 1:", g ** 24 == F.one)

# the exp/log tables make products cheap; compare with the polynomial route
a, b = F.from_index(7), F.from_index(18)
print("a*b =", (a * b).coeffs, " via logs:", F.from_dlog(discrete_log(a) + discrete_log(b)).coeffs)

# the absolute trace takes each value in F_5 equally often
traces = np.array([absolute_trace(x) for x in F.elements()])
print("trace histogram:", np.bincount(traces, minlength=5))

# Frobenius orbits have size 1 (the prime field) or 2
sizes = np.array([len(frobenius_orbit(x)) for x in F.elements()])
print("orbit sizes:", dict(zip(*(u.tolist() for u in np.unique(sizes, return_counts=True)))))

# larger fields switch to baby-step giant-step for logs once tables would be too big
G = build_field(2, 22)
x = G.gamma ** 1_234_567
print("F_2^22 has tables:", G.has_tables, " dlog:", discrete_log(x))
