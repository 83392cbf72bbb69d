import io
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from kldegree._arith import euler_phi
from kldegree.congruence import (
    CongruenceInstance,
    admissible_pairs,
    closed_form_solution_set,
    cst_residue_identity,
    lemma4_lift,
    phi_count_matches,
    reduced_solution,
    s_values,
    solvability,
    solve_congruence_4,
    union_identity,
    verification_grid,
    write_grid_csv,
)


def test_lemma4_examples():
    assert lemma4_lift(12, 4, 3) == 7
    assert lemma4_lift(12, 4, 1) == 1
    assert lemma4_lift(9, 9, 4) == 4
    with pytest.raises(ValueError):
        lemma4_lift(12, 4, 2)
    with pytest.raises(ValueError):
        lemma4_lift(12, 5, 1)


def test_lemma4_surjective_brute_force():
    for n in range(1, 201):
        units_n = [x for x in range(n) if gcd(x, n) == 1]
        for m in (m for m in range(1, n + 1) if n % m == 0):
            image = {x % m for x in units_n}
            for y in range(m):
                if gcd(y, m) != 1:
                    continue
                x = lemma4_lift(n, m, y)
                assert gcd(x, n) == 1 and (x - y) % m == 0
                assert y % m in image


def test_solvability_examples():
    assert solvability(CongruenceInstance(5, 2, 1, 2, 2, 1))
    assert solvability(CongruenceInstance(5, 4, 1, 2, 2, 2))  # t = 2, r/t = 2
    assert not solvability(CongruenceInstance(5, 3, 1, 2, 2, 1))  # r/t = 3 is odd
    assert not solvability(CongruenceInstance(13, 3, 1, 2, 2, 1))  # e = 2 does not divide r/t = 3
    assert not solvability(CongruenceInstance(7, 3, 1, 2, 6, 1))  # e beyond (p-1)/d
    with pytest.raises(ValueError):
        CongruenceInstance(5, 2, 1, 2, 2, 2)
    with pytest.raises(ValueError):
        CongruenceInstance(7, 2, 2, 1, 3, 1)  # gcd(e, (n+1)/d) = 3


def test_solve_examples():
    assert solve_congruence_4(CongruenceInstance(5, 2, 1, 2, 2, 1)) == {3, 9, 15, 21}
    assert solve_congruence_4(CongruenceInstance(13, 3, 1, 2, 2, 1)) == set()


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(2, 5), st.integers(1, 4), st.data())
def test_solution_set_matches_brute_force(p, r, n, data):
    d = gcd(n + 1, p - 1)
    es = [e for e in range(2, p) if gcd(e, (n + 1) // d) == 1]
    if not es:
        return
    e = data.draw(st.sampled_from(es))
    s = data.draw(st.integers(1, r - 1))
    inst = CongruenceInstance(p, r, n, d, e, s)
    m = inst.modulus
    if (n + 1) // d * m % e:
        assert solve_congruence_4(inst) == set()
        return
    brute = {x for x in range(m) if ((p**s - 1) * x - inst.rhs) % m == 0}
    assert solve_congruence_4(inst) == brute
    if solvability(inst):
        assert brute
        assert reduced_solution(inst) == min(brute) % inst.c_rt
        assert all(x % inst.c_rt == reduced_solution(inst) for x in brute)
    else:
        assert reduced_solution(inst) is None


def test_closed_form_examples():
    assert closed_form_solution_set(5, 2, 1, 2, 2, 1) == {3, 9, 15, 21}
    assert len(closed_form_solution_set(7, 3, 1, 2, 3, 1)) == 12
    with pytest.raises(ValueError):
        closed_form_solution_set(5, 3, 1, 2, 2, 1)


@pytest.mark.parametrize("p,r,n", [(5, 4, 1), (7, 6, 1), (13, 6, 2), (11, 5, 1), (13, 4, 1)])
def test_closed_form_cardinality(p, r, n):
    d = gcd(n + 1, p - 1)
    for e, t in admissible_pairs(p, r, n):
        assert len(closed_form_solution_set(p, r, n, d, e, t)) == euler_phi(e) * (p**t - 1)


def test_cst_examples():
    assert cst_residue_identity(5, 2, 3, 1) == (31, 3)
    assert cst_residue_identity(7, 3, 2, 1) == (8, 2)
    assert cst_residue_identity(13, 4, 3, 3) == (1, 1)
    with pytest.raises(ValueError):
        cst_residue_identity(5, 3, 2, 1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13, 31]), st.integers(1, 12), st.integers(1, 6), st.data())
def test_cst_identity_random(p, s_mult, t, data):
    e = data.draw(st.sampled_from([e for e in range(1, p) if (p - 1) % e == 0]))
    c, sp = cst_residue_identity(p, e, s_mult * t, t)
    assert (c - sp) % e == 0


def test_union_grid():
    rows = verification_grid()
    assert len(rows) == 78
    assert all(c.equal and c.union_size == c.closed_form_size for c in rows)
    for c in rows:
        assert c.closed_form_size == euler_phi(c.e) * (c.p**c.t - 1)


def test_union_single_example():
    c = union_identity(7, 6, 1, 3, 2)
    assert c.equal and s_values(6, 2) == [2, 4]


def test_grid_csv():
    buf = io.StringIO()
    write_grid_csv(verification_grid(primes=(5,), max_r=2, max_n=1), buf)
    assert buf.getvalue() == "p,r,n,e,t,union_size,closed_form_size,equal\n5,2,1,2,1,4,4,true\n"


@pytest.mark.parametrize("r", range(1, 25))
def test_phi_count(r):
    for t in (t for t in range(1, r + 1) if r % t == 0):
        assert phi_count_matches(r, t)


def test_reduced_solution_uses_canonical_inverse():
    inst = CongruenceInstance.make(7, 6, 1, 3, 4)  # t = 2, s' = 2, s* = 2
    assert inst.t == 2
    x = reduced_solution(inst)
    assert x == 2 * (inst.c_rt // 3) % inst.c_rt
    assert x in {y % inst.c_rt for y in solve_congruence_4(inst)}
