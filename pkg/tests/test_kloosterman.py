import io
import json
from collections import Counter

import pytest

from kldegree import kloosterman as klmod
from kldegree.cyclotomic import CycInt, cyc_sum, galois_apply, is_rational, root_power
from kldegree.finite_field import frobenius
from kldegree.kloosterman import (
    KlTable,
    check_distinctness,
    distinctness_bounds,
    equivariance_failures,
    frobenius_failures,
    kloosterman_direct,
    kloosterman_sweep,
    psi,
    read_table_csv,
    table_to_csv,
    table_to_json,
)

from conftest import field, table
from oracle import naive_orbit_count, naive_value_multiset

F5_VALUES = {1: [2, 0, 1, 1], 2: [0, 0, 2, 2], 3: [-2, 0, -2, -2], 4: [1, 0, -1, -1]}

GRID = [(2, 1, 1), (2, 3, 1), (3, 2, 1), (5, 1, 1), (5, 2, 1), (7, 2, 1), (3, 3, 2),
        (2, 4, 2), (5, 1, 3), (5, 2, 2), (7, 1, 2), (3, 2, 3), (2, 3, 3)]


def hand_kloosterman_prime_field(p, a):
    """Kl_1(p, a) from integers mod p: count x by the exponent x + a/x mod p."""
    counts = [0] * p
    for x in range(1, p):
        counts[(x + a * pow(x, -1, p)) % p] += 1
    return [c - counts[-1] for c in counts[:-1]]


def test_hand_oracle_reproduces_listed_terms():
    # x=1 -> z^2, x=2 -> z^0, x=3 -> z^0, x=4 -> z^3
    assert [(x + pow(x, -1, 5)) % 5 for x in range(1, 5)] == [2, 0, 0, 3]
    for a, coeffs in F5_VALUES.items():
        assert hand_kloosterman_prime_field(5, a) == coeffs


def test_psi(f25, f5):
    assert psi(f25.zero) == 1
    assert psi(f5.scalar(3)).coeffs == (0, 0, 0, 1)
    for a in f25.elements():
        for b in f25.elements():
            assert psi(a + b) == psi(a) * psi(b)


@pytest.mark.parametrize("a", range(5))
def test_direct_prime_field(f5, a):
    got = kloosterman_direct(f5, 1, f5.scalar(a))
    expected = hand_kloosterman_prime_field(5, a) if a else [-1, 0, 0, 0]
    assert list(got.coeffs) == expected


def test_direct_cap(f25):
    with pytest.raises(ValueError, match="cap"):
        kloosterman_direct(f25, 3, f25.one, cap=1000)


def test_sweep_prime_field_values(f5):
    t = kloosterman_sweep(f5, 1)
    assert t.zero_value.coeffs == (-1, 0, 0, 0)
    for a, coeffs in F5_VALUES.items():
        assert list(t[f5.scalar(a)].coeffs) == coeffs


@pytest.mark.parametrize("p", [7, 11, 13, 31])
def test_sweep_matches_hand_oracle_on_prime_fields(p):
    F = field(p)
    t = table(p, 1, 1)
    for a in range(1, p):
        assert list(t[F.scalar(a)].coeffs) == hand_kloosterman_prime_field(p, a)


@pytest.mark.parametrize("p,r,n", GRID)
def test_sweep_matches_direct(p, r, n):
    F = field(p, r)
    t = table(p, r, n)
    for a, v in t.items():
        assert kloosterman_direct(F, n, a) == v


@pytest.mark.parametrize("p,r,n", [(5, 2, 1), (3, 3, 1), (2, 4, 2), (7, 2, 1), (5, 1, 3), (3, 2, 2)])
def test_sweep_value_multiset_matches_naive_model(p, r, n):
    t = table(p, r, n)
    assert Counter(v.coeffs for v in t.by_dlog) == naive_value_multiset(p, r, n)


def test_object_dtype_path_agrees(monkeypatch):
    fast = kloosterman_sweep(field(3, 2), 3)
    monkeypatch.setattr(klmod, "_count_dtype", lambda q, n: object)
    assert kloosterman_sweep(field(3, 2), 3) == fast


@pytest.mark.parametrize("p,r,n", GRID + [(5, 4, 1), (7, 3, 1)])
def test_table_invariants(p, r, n):
    t = table(p, r, n)
    assert len(t) == p**r
    assert t.zero_value == (-1) ** n
    assert equivariance_failures(t) == []
    assert frobenius_failures(t) == []
    # for each fixed tuple, the inner sum over a of psi(a / prod) vanishes
    assert cyc_sum(p, (v for _, v in t.items())) == 0


def test_d_equals_p_minus_1_gives_rational_values():
    t = table(5, 1, 3)  # d = gcd(4, 4) = 4
    assert all(is_rational(v) for v in t.by_dlog)


def test_equivariance_detects_corruption(f25):
    t = table(5, 2, 1)
    vals = list(t.by_dlog)
    vals[1] = vals[1] + root_power(5, 1)
    bad = KlTable(t.field, 1, t.zero_value, tuple(vals))
    assert equivariance_failures(bad)
    assert frobenius_failures(bad)


# --- distinctness ---------------------------------------------------------------


@pytest.mark.parametrize("p,r,n", [(5, 1, 1), (5, 2, 1), (7, 3, 1), (2, 1, 1), (13, 2, 1)])
def test_distinctness_holds(p, r, n):
    rep = check_distinctness(table(p, r, n))
    assert rep.holds and rep.violations == []


def test_distinctness_negative_path_synthetic():
    t = table(5, 2, 1)
    F = t.field
    vals = list(t.by_dlog)
    vals[1] = vals[2]  # gamma and gamma^2 are not Frobenius conjugate in F_25
    rep = check_distinctness(KlTable(F, 1, t.zero_value, tuple(vals)))
    assert not rep.holds
    assert any({a.value, b.value} == {F.from_dlog(1).value, F.from_dlog(2).value}
               for a, b in rep.violations)
    # conjugate duplicates are allowed
    assert frobenius(F.from_dlog(1)) == F.from_dlog(5)


@pytest.mark.parametrize("p,r,distinct,orbits", [(5, 3, 39, 44), (5, 4, 143, 164), (3, 2, 4, 5)])
def test_distinctness_fails_where_values_collide(p, r, distinct, orbits):
    # frozen from the naive model; F_625 is a field the n = 1, r <= 4 guarantee covers
    t = table(p, r, 1)
    assert len(set(t.by_dlog)) == distinct
    assert naive_orbit_count(p, r) == orbits
    assert not check_distinctness(t).holds


def test_f125_rational_collisions():
    # six points of F_125 share the rational value -6 (reproduced by the naive model)
    t = table(5, 3, 1)
    rational = [v for v in t.by_dlog if is_rational(v)]
    assert [v.coeffs[0] for v in rational] == [-6] * 6
    assert naive_value_multiset(5, 3, 1)[(-6, 0, 0, 0)] == 6


def test_bounds_examples():
    b = distinctness_bounds(5, 4, 1)
    assert b.guaranteed
    b = distinctness_bounds(5, 2, 1)
    assert b.fischer_threshold == 1089 and not b.fischer_bound_met and b.guaranteed
    assert distinctness_bounds(1093, 2, 1).fischer_bound_met
    b = distinctness_bounds(5, 2, 2)
    assert b.fischer_threshold == 26569 and not b.fischer_bound_met and not b.guaranteed
    assert distinctness_bounds(26573, 2, 2).fischer_bound_met
    b = distinctness_bounds(7, 3, 1)
    assert b.wan_threshold == 6 and b.wan_bound_met and b.wan_advisory_only


# --- interchange ------------------------------------------------------------------


def test_csv_round_trip_and_layout():
    t = table(5, 1, 1)
    text = table_to_csv(t)
    lines = text.splitlines()
    assert lines[0] == "a,c0,c1,c2,c3"
    assert lines[1] == "zero,-1,0,0,0"
    assert len(lines) == 6 and "\r" not in text
    assert read_table_csv(io.StringIO(text), t.field, 1) == t


def test_csv_rejects_incomplete_table():
    t = table(5, 1, 1)
    text = "\n".join(table_to_csv(t).splitlines()[:-1])
    with pytest.raises(ValueError):
        read_table_csv(io.StringIO(text), t.field, 1)


def test_csv_embed_column_is_optional():
    t = table(5, 1, 1)
    text = table_to_csv(t, embed_precision=6)
    assert text.splitlines()[0].endswith(",approx")
    assert read_table_csv(io.StringIO(text), t.field, 1) == t


def test_json_export():
    t = table(5, 2, 1)
    doc = json.loads(table_to_json(t))
    assert doc["n"] == 1 and doc["field"]["p"] == 5
    assert len(doc["values"]) == 25 and doc["values"][0]["a"] == "zero"
    assert table_to_json(t) == table_to_json(kloosterman_sweep(field(5, 2), 1))


def test_galois_action_example():
    t = table(5, 1, 1)
    F = t.field
    # sigma_2 maps Kl(1) to Kl(2^2 * 1) = Kl(4)
    assert galois_apply(2, t[F.one]) == t[F.scalar(4)] == CycInt(5, F5_VALUES[4])
