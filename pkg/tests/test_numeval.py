import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypseries.numeval import (NoConvergenceDetected, NumericCheck, PoleProximity,
                               alternating_pfq, bessel_j, f1_at_y_one, gamma_complex,
                               gauss_sum_target, kummer_minus_one_target, pfq_at_one,
                               pfq_partial_sum, radius_growth_proxy, rgamma_complex,
                               run_numeric_check)


def rel(u, v):
    return abs(u - v) / abs(v)


def test_gamma_values():
    assert gamma_complex(1) == 1
    assert abs(gamma_complex(0.5) - math.sqrt(math.pi)) < 1e-14
    assert gamma_complex(5) == 24
    with pytest.raises(PoleProximity):
        gamma_complex(-3)
    assert rgamma_complex(-2) == 0


@settings(max_examples=300, deadline=None)
@given(st.floats(-30, 50), st.floats(-30, 30))
def test_gamma_against_mpmath(re, im):
    z = complex(re, im)
    if abs(z) > 50 or min(abs(z + n) for n in range(0, 40)) < 1e-3:
        return
    ref = complex(mpmath.gamma(mpmath.mpc(re, im)))
    assert rel(gamma_complex(z), ref) < 1e-12


def test_binomial_collapse():
    for a in (0.3, -1.7, 2.5):
        assert rel(pfq_partial_sum([a, 0.7], [0.7], 0.25), 0.75 ** -a) < 1e-14


def test_partial_sum_terms_and_divergence():
    value, terms = pfq_partial_sum([-3, 0.5], [1.5], 0.9, return_terms=True)
    assert terms <= 8 and rel(value, complex(mpmath.hyp2f1(-3, 0.5, 1.5, 0.9))) < 1e-14
    with pytest.raises(NoConvergenceDetected):
        pfq_partial_sum([0.5, 1 / 3], [1.25], 2.0)
    with pytest.raises(PoleProximity):
        pfq_partial_sum([0.5], [-2.0], 0.5)


def test_partial_sums_against_mpmath():
    rng = random.Random(3)
    for _ in range(20):
        a, b, c = (rng.uniform(-3, 3) for _ in range(3))
        x = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.3, 0.3))
        ref = complex(mpmath.hyp2f1(a, b, c, x))
        assert abs(pfq_partial_sum([a, b], [c], x) - ref) < 1e-11 * max(1, abs(ref))


def test_gauss_sum():
    lhs = pfq_at_one(0.5, 1 / 3, 2)
    target = gamma_complex(2) * gamma_complex(7 / 6) / (gamma_complex(1.5) * gamma_complex(5 / 3))
    assert rel(lhs, target) < 1e-8
    assert rel(gauss_sum_target(0.5, 1 / 3, 2), target) < 1e-14
    with pytest.raises(NoConvergenceDetected):
        pfq_at_one(1, 1, 1.5)


def test_f1_at_y_one_against_mpmath():
    ref = complex(mpmath.appellf1(1 / 3, 1 / 4, 1 / 5, 3, 0.3, 1))
    assert rel(f1_at_y_one(1 / 3, 3, 1 / 4, 1 / 5, 0.3), ref) < 1e-9


def test_alternating_sum_at_minus_one():
    a, b = 0.7, 0.4
    ref = complex(mpmath.hyp2f1(a, b, 1 + a - b, -1))
    assert rel(alternating_pfq([a, b], [1 + a - b]), ref) < 1e-9
    assert rel(kummer_minus_one_target(a, b), ref) < 1e-12


def test_bessel_series():
    assert rel(bessel_j(0.5, 0.9), complex(mpmath.besselj(0.5, 0.9))) < 1e-13
    assert rel(bessel_j(2, 3.0), complex(mpmath.besselj(2, 3.0))) < 1e-13


def test_numeric_check_and_negative_control():
    a = 0.75
    target = (4 ** (2 * a / 3) * gamma_complex(1.25) ** 2
              / (gamma_complex(a) * gamma_complex(1.75)))
    assert rel(target, complex(mpmath.hyp2f1(a, 0.5, 1.25, 0.75))) < 1e-12
    chk = NumericCheck("2F1(3/4)", lambda: pfq_partial_sum([a, 0.5], [1.25], 0.75),
                       lambda: target)
    rep = run_numeric_check(chk)
    assert rep.passed and rep.residual < 1e-8 and rep.tolerance == 1e-8
    chk.perturb = 1e-3
    assert run_numeric_check(chk).outcome == "fail"
    bad = NumericCheck("div", lambda: pfq_partial_sum([0.5, 1 / 3], [1.25], 2.0), lambda: 1)
    assert run_numeric_check(bad).outcome == "error"


def test_radius_proxy():
    rep = radius_growth_proxy(0.5, 2)
    assert rep.passed and rep.residual < 0.01
    rep = radius_growth_proxy(0.75, 0.75)
    assert rep.passed and rep.residual < 1e-12
    rep = radius_growth_proxy(2, 0.5)
    assert rep.passed and "holds" in rep.note


def test_radius_error_shrinks_like_one_over_n():
    a, c = 0.3, 1.8
    errs = [radius_growth_proxy(a, c, n_max=n).residual for n in (100, 200, 400)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] * 400 == pytest.approx(abs((a - c) * (a + c - 1)) / 2, rel=0.05)


def test_float_realization_of_exact_params():
    from fractions import Fraction
    assert pfq_partial_sum([Fraction(1, 2)], [], 0.5) == pytest.approx(cmath.sqrt(2))
