"""
Tabulating Kloosterman sums
===========================

Kl_n(q, a) sums psi(x_1 + ... + x_n + a/(x_1...x_n)) over (F_q^*)^n.  The sweep
counts, for every a at once, how often each trace value occurs, working on discrete
logs so that the product constraint becomes a convolution over Z/(q-1).
"""

import time

from kldegree import (
    build_field,
    check_distinctness,
    is_rational,
    kloosterman_direct,
    kloosterman_sweep,
    table_to_csv,
)

F = build_field(5, 1)
T = kloosterman_sweep(F, 1)
print(table_to_csv(T))

# the direct definition agrees entry for entry
print("direct == sweep:", all(kloosterman_direct(F, 1, a) == v for a, v in T.items()))

# a cubic extension of F_7
F = build_field(7, 3)
t0 = time.perf_counter()
T = kloosterman_sweep(F, 1)
print(f"F_343 sweep in {time.perf_counter() - t0:.3f}s;",
      "distinct values:", len(set(T.by_dlog)))
print("rational values at nonzero a:", sum(is_rational(v) for v in T.by_dlog))

# distinctness up to Frobenius is what turns containment into equality
rep = check_distinctness(T)
print("values distinct up to Frobenius:", rep.holds)

# it is not automatic: on F_625 some non-conjugate points collide
rep = check_distinctness(kloosterman_sweep(build_field(5, 4), 1))
print("F_625:", rep.holds, f"({len(rep.violations)} colliding pairs)")
