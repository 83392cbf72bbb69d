"""
The exponent congruences, solved by hand
========================================

The coset description of the special points comes from a linear congruence in the
exponent x of a = gamma^x.  Solving it separately for each s and taking the union
over gcd(r, s) = t recovers the closed-form coset exactly.
"""

from kldegree import congruence as cong

inst = cong.CongruenceInstance.make(5, 2, 1, e=2, s=1)
print(f"(p^s-1) x = {inst.rhs} mod {inst.modulus}:", sorted(cong.solve_congruence_4(inst)))
print("closed form:", sorted(cong.closed_form_solution_set(5, 2, 1, 2, 2, 1)))

# lifting a unit mod m to a unit mod n
print("lift 3 mod 4 to a unit mod 12:", cong.lemma4_lift(12, 4, 3))

# C_{s,t} = s/t mod e whenever p = 1 mod e
print("C_{3,1} for p = 5:", cong.cst_residue_identity(5, 2, 3, 1))

rows = cong.verification_grid()
print(f"{sum(c.equal for c in rows)}/{len(rows)} grid instances agree")
for c in rows[:5]:
    print(c)
