from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uppermccool.alexinv import groebner_G, positions, presentation
from uppermccool.hilbert import (
    RationalSeries,
    brute_force_counts,
    chen_closed,
    chen_from_series,
    closed_hilb_Bn,
    closed_hilb_Bprime,
    comparison_ranks,
    hilb_fp,
    hilb_Kn,
    hilb_module,
    hilb_monomial,
    per_position_series,
    ses_identity,
    theta_mccool,
)
from uppermccool.modgb import MonomialModule, initial_module
from uppermccool.qpoly import Monomial, nvars

T = RationalSeries.term


# -- RationalSeries -----------------------------------------------------------


def test_canonical_form_divides_out():
    s = RationalSeries((1, -1), 3)
    assert s.num == (1,) and s.denom == 2


def test_series_arith():
    a = T(1, 0, 3) + T(3, 0, 2)
    assert a.expand(5) == [4, 9, 15, 22, 30]
    assert (a - a).is_zero()
    assert (T(1, 0, 1) * T(1, 0, 1)) == T(1, 0, 2)
    assert T(2, 1, 1).shift(1) == T(2, 2, 1)


def test_to_dict():
    assert T(1, 1, 1).to_dict() == {"num": [0, 1], "denomPower": 1}


series_st = st.builds(
    lambda num, d: RationalSeries(tuple(num), d),
    st.lists(st.integers(-5, 5), max_size=5),
    st.integers(0, 5),
)


@settings(max_examples=100)
@given(series_st, series_st)
def test_series_ring_ops_match_expansion(a, b):
    N = 8
    ea, eb = a.expand(N + 1), b.expand(N + 1)
    assert (a + b).expand(N + 1) == [p + q for p, q in zip(ea, eb)]
    prod = [sum(ea[i] * eb[k - i] for i in range(k + 1)) for k in range(N + 1)]
    assert (a * b).expand(N + 1) == prod


@given(series_st)
def test_canonicalization_idempotent(a):
    assert RationalSeries(a.num, a.denom) == a


# -- monomial ideals ---------------------------------------------------------


def test_zero_ideal():
    assert hilb_monomial([], 6) == T(1, 0, 6)


def test_whole_variable_in_one_variable():
    assert hilb_monomial([Monomial({0: 1})], 1) == RationalSeries.const(1)


def test_unit_ideal():
    assert hilb_monomial([Monomial.one()], 3).is_zero()


def test_pure_powers():
    s = hilb_monomial([Monomial({0: 2}), Monomial({1: 3})], 3)
    assert s == RationalSeries((1, 0, -1, -1, 0, 1), 3)


def test_example_against_brute_force():
    gens = [Monomial.var(2, 1, 2), Monomial.var(3, 1) * Monomial.var(2, 1), Monomial.var(3, 2) * Monomial.var(2, 1)]
    s = hilb_monomial(gens, 3)
    assert s.expand(9) == brute_force_counts(gens, range(3), 8)


ideal_st = st.tuples(
    st.integers(1, 6),
    st.lists(st.lists(st.integers(0, 5), min_size=1, max_size=3), min_size=0, max_size=8),
)


@settings(max_examples=100, deadline=None)
@given(ideal_st)
def test_recursion_vs_brute_force(data):
    nv, raw = data
    gens = []
    for vs in raw:
        e = {}
        for v in vs:
            e[v % nv] = e.get(v % nv, 0) + 1
        gens.append(Monomial(e))
    assert hilb_monomial(gens, nv).expand(9) == brute_force_counts(gens, range(nv), 8)


# -- modules -----------------------------------------------------------------


def test_zero_module():
    assert hilb_module(MonomialModule({}), positions(4), 6) == T(4, 0, 6)


def test_closed_forms():
    assert closed_hilb_Bn(3) == T(1, 0, 2)
    assert closed_hilb_Bn(4) == T(1, 0, 3) + T(3, 0, 2) + T(1, 1, 1)
    assert closed_hilb_Bn(5) == T(1, 0, 4) + T(3, 0, 3) + T(6, 0, 2) + T(5, 1, 1)
    assert closed_hilb_Bprime(4) == T(1, 0, 3) + T(3, 0, 2)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_hilb_fp_matches_closed(n):
    assert hilb_fp(presentation(n, "B")) == closed_hilb_Bn(n)


def test_hilb_n4_expansion():
    assert hilb_fp(presentation(4, "B")).expand(6) == [4, 10, 16, 23, 31, 40]


def test_hilb_n3_from_oracle():
    # B_3 = S / (x31 + x21) with 3 variables; leading term x31
    s = hilb_fp(presentation(3, "B"))
    assert s == T(1, 0, 2)
    assert s.expand(9) == brute_force_counts([Monomial.var(3, 1)], range(3), 8)


def test_initial_module_G_n4():
    s = hilb_module(initial_module(groebner_G(4)), positions(4), nvars(4))
    assert s == closed_hilb_Bn(4)


@pytest.mark.parametrize("n", [4, 5])
def test_Bprime_matches_closed(n):
    assert hilb_fp(presentation(n, "Bprime")) == closed_hilb_Bprime(n)


@pytest.mark.parametrize("n", [4, 5])
def test_per_position_series(n):
    ini = initial_module(groebner_G(n))
    total = RationalSeries.zero()
    for t in positions(n):
        s = hilb_monomial(ini.at(t), nvars(n))
        assert s == per_position_series(t[2])
        assert s.expand(7) == brute_force_counts(sorted(ini.at(t), key=lambda m: m.key), range(nvars(n)), 6)
        total = total + s
    assert total == closed_hilb_Bn(n)


def test_per_position_alternatives_do_not_sum():
    # the forms with k*t/(1-t) overshoot the theorem's tail
    n = 5
    alt = RationalSeries.zero()
    for t in positions(n):
        k = t[2]
        alt = alt + T(1, 0, k + 1) + T(k, 1, 1)
    assert alt != closed_hilb_Bn(n)
    assert alt - closed_hilb_Bn(n) == T(comb(n + 1, 4) - comb(n, 4), 1, 1)


# -- short exact sequence ------------------------------------------------------


def test_hilb_Kn():
    for n in range(4, 8):
        assert hilb_Kn(n) == T(comb(n, 4), 0, 1)


@pytest.mark.parametrize("n", [4, 5])
def test_ses_identity(n):
    res = ses_identity(n)
    assert res.holds and res.delta == 1


def test_ses_degenerate_n3():
    res = ses_identity(3)
    assert res.holds and res.hilb_K.is_zero()


# -- Chen ranks ---------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_chen_closed_vs_series(n):
    a, b = chen_closed(n, 12), chen_from_series(n, 12)
    assert a.theta[1:] == b.theta[1:]
    assert a[1] == comb(n, 2) and a[2] == comb(n, 3)


def test_chen_values_n4():
    th = chen_closed(4, 6)
    assert th[3] == 10 and th[4] == 16 and th[5] == 23
    assert th[4] == 2 * comb(5, 4) + comb(6, 5)


def test_chen_from_computed_series():
    s = hilb_fp(presentation(4, "B"))
    assert chen_from_series(4, 8, s).theta == chen_closed(4, 8).theta


def test_comparison_n4():
    c = comparison_ranks(4)
    assert (c["theta4_P"], c["theta4_Pi"], c["theta4_upper_mccool"]) == (15, 18, 16)
    assert c["pairwise_distinct"]
    assert c["thetak_mccool"] == 78 == theta_mccool(4, 4)


def test_comparison_n3_values_only():
    c = comparison_ranks(3)
    assert c["theta4_P"] == 3 and c["theta4_upper_mccool"] == chen_closed(3, 4)[4]
