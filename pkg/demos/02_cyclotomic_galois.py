"""
Cyclotomic integers and the subfields they generate
===================================================

Values of Kloosterman sums live in Z[zeta_p].  An element is stored by its p-1
coefficients in the power basis, so equality is exact.  The Galois group acts by
zeta -> zeta^i and the subgroup fixing x pins down the field Q(x).
"""

from kldegree import CycInt, complex_embed, field_label, galois_apply, root_power, stabilizer

z = root_power(5, 1)
x = 2 + z**2 + z**3
print("x =", x, "~", complex(complex_embed(x, 12)))

# sigma_4 is complex conjugation; it fixes x because x is real
for i in range(1, 5):
    print(f"sigma_{i}(x) = {galois_apply(i, x)}")

print("stabilizer:", stabilizer(x))
lab = field_label(x)
print(f"Q(x) = E_{lab.d}, degree {lab.degree} over Q")

# a Gaussian period of p = 13 generates the degree-3 subfield
p = 13
period = sum((root_power(p, pow(2, 3 * k, p)) for k in range(4)), CycInt.from_int(p, 0))
lab = field_label(period)
print(f"p = 13 period: E_{lab.d}, degree {lab.degree}")
