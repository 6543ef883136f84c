from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypseries.field import QuadElem
from hypseries.hypop import (HypParams, InadmissibleLowerParameter, PochhammerPole, hyp_apply,
                             hyp_difop_apply, pochhammer, pochhammer_int, pochhammer_ratios)
from hypseries.series import MultiSeries
from hypseries.specfun import kernel_series
from hypseries.verify.properties import LAWS, basic_property_suite, pochpower_table

N = 10
generic = st.fractions(min_value=-10, max_value=10, max_denominator=20).filter(
    lambda q: q.denominator != 1)


def X(n=N):
    return MultiSeries.var("x", ("x",), n)


def test_pochhammer_values():
    assert pochhammer(F(7, 3), 0) == 1
    assert pochhammer(2, 3) == 24
    assert pochhammer(-3, 5) == 0
    assert pochhammer_int(5, -2) == F(1, 12)
    assert pochhammer_int(F(2, 7), 1) == F(2, 7)
    with pytest.raises(PochhammerPole):
        pochhammer_int(2, -2)


def test_ratios_incremental_match_direct():
    a, c = F(1, 3), F(7, 4)
    assert pochhammer_ratios(a, c, 8) == [pochhammer(a, k) / pochhammer(c, k) for k in range(9)]


def test_hyp_examples():
    x = X(2)
    assert hyp_apply(1 + x + x ** 2, HypParams(1, 2)) == 1 + x / 2 + x ** 2 / 3
    f = 1 + 3 * X() - X() ** 4
    assert hyp_apply(f, HypParams(F(2, 5), F(2, 5))) == f


def test_hyp_on_cosine_kernel_gives_0f1():
    c = F(7, 3)
    cos = kernel_series("cossqrt", {}, ("x",), 8)
    out = hyp_apply(cos, HypParams(F(1, 2), c))
    for k in range(9):
        assert out.coeff((k,)) == F((-1) ** k) / (pochhammer(c, k) * pochhammer(1, k))
    assert out.coeff((1,)) == -1 / c


def test_lower_parameter_gate():
    with pytest.raises(InadmissibleLowerParameter):
        HypParams(F(1, 2), -1)
    with pytest.raises(InadmissibleLowerParameter):
        HypParams(F(1, 2), 0)
    HypParams(-3, F(1, 2))  # upper parameter may be a nonpositive integer


def test_hyp_acts_on_one_variable_only():
    vars = ("x", "y")
    x, y = (MultiSeries.var(v, vars, 4) for v in vars)
    out = hyp_apply(1 + x + y + x * y, HypParams(1, 2, "y"))
    assert out == 1 + x + y / 2 + x * y / 2


def test_quadratic_parameters_promote_the_field():
    w = QuadElem(F(-1, 2), F(1, 2), -3)
    out = hyp_apply(1 + X(3), HypParams(w, 2))
    assert out.coeff((1,)) == w / 2


def test_difop_examples():
    f = 1 + 2 * X() + X() ** 2
    assert hyp_difop_apply(f, F(3, 2), 0) == f
    assert hyp_difop_apply(X() ** 2, 1, 1) == 3 * X() ** 2


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=9, min_value=-9, max_value=9), min_size=11,
                max_size=11), generic, st.integers(0, 3))
def test_difop_matches_ratio_route(coeffs, a, n):
    f = MultiSeries.from_terms(("x",), N, {(k,): v for k, v in enumerate(coeffs)})
    assert hyp_difop_apply(f, a, n) == hyp_apply(f, HypParams(a + n, a))


@settings(max_examples=50, deadline=None)
@given(generic, generic, generic, generic)
def test_commutativity_and_exchange(a, b, c, d):
    f = (1 - X()).pow_field(F(1, 3)) + X() ** 3
    hac = lambda g: hyp_apply(g, HypParams(a, c))
    hbd = lambda g: hyp_apply(g, HypParams(b, d))
    assert hac(hbd(f)) == hbd(hac(f))
    assert hac(hbd(f)) == hyp_apply(hyp_apply(f, HypParams(b, c)), HypParams(a, d))


@pytest.mark.parametrize("a", [F(1, 3), F(-7, 4), F(5, 2), 2])
def test_pochhammer_power_law(a):
    assert pochpower_table(a=a) is None


def test_basic_property_suite_passes():
    reports = basic_property_suite(draws=200, N=N, seed=3)
    assert {r.id for r in reports} == set(LAWS) | {"Pochpower"}
    assert all(r.passed for r in reports), [(r.id, r.mismatch) for r in reports if not r.passed]


def test_law_checks_catch_a_wrong_law():
    # swapping the roles in the exchange law must be detected
    f = 1 + X() + X() ** 2
    a, b, c, d = F(1, 3), F(2, 5), F(7, 4), F(-3, 7)
    lhs = hyp_apply(hyp_apply(f, HypParams(b, d)), HypParams(a, c))
    wrong = hyp_apply(hyp_apply(f, HypParams(a, c)), HypParams(b, c))
    assert lhs.first_mismatch(wrong) is not None
