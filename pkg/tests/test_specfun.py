import random
from fractions import Fraction as F
from math import factorial

import pytest

from hypseries.field import QuadElem
from hypseries.hypop import PochhammerPole
from hypseries.series import MultiSeries
from hypseries.specfun import (InadmissibleParameter, f1_multi_series, family_series,
                               kernel_series, rep_oracle, rep_series)


def rf(a, n):
    out = F(1)
    for j in range(n):
        out *= a + j
    return out


def xy(order, vars=("x", "y")):
    return [MultiSeries.var(v, vars, order) for v in vars]


def rnd(rng):
    while True:
        q = F(rng.randint(-20, 20), rng.randint(2, 20))
        if q.denominator != 1:
            return q


def test_kernel_examples():
    assert str(kernel_series("coshsqrt", order=2)) == "1 + 2*x + 2/3*x^2"
    assert kernel_series("fn", {"n": 1}, order=8) == kernel_series("exp", order=8)
    assert kernel_series("arctanratio", order=5).coeff((0,)) == 1
    f3 = kernel_series("fn", {"n": 3}, order=6)
    assert f3.coeff((2,)) == F(3 ** 6, factorial(6))
    with pytest.raises(InadmissibleParameter):
        kernel_series("fn", {"n": 0})
    with pytest.raises(KeyError):
        kernel_series("nope")


def test_f4_kernel_is_a_ratio():
    k = kernel_series("f4kernel", order=8)
    t, x, y = xy(8, ("t", "x", "y"))
    s = t * (x + y)
    assert k * (1 - 2 * s + t * t * (x - y) ** 2) == 1 - s


def test_pfq_matches_pochhammer_sum():
    a, b, c = F(1, 2), F(1, 3), F(5, 4)
    s = family_series("pfq", {"a": [a, b], "c": [c]}, order=8)
    for k in range(9):
        assert s.coeff((k,)) == rf(a, k) * rf(b, k) / (rf(c, k) * factorial(k))


def test_gauss_collapses_to_binomial():
    a, c = F(2, 7), F(-5, 3)
    (x,) = xy(12, ("x",))
    assert family_series("pfq", {"a": [a, c], "c": [c]}, order=12) == (1 - x).pow_field(-a)


def test_f1_with_equal_parameters_factors():
    a, b1, b2 = F(1, 3), F(2, 5), F(-3, 7)
    x, y = xy(10)
    f = family_series("appell_f1", {"a": a, "c": a, "b1": b1, "b2": b2}, order=10)
    assert f == (1 - x).pow_field(-b1) * (1 - y).pow_field(-b2)


def test_g2_special_case():
    a, c = F(1, 3), F(2, 7)
    x, y = xy(10)
    f = family_series("horn_g2", {"a": a, "c": c, "b1": 1 - c, "b2": 1 - a}, order=10)
    assert f == (1 + y).pow_field(-c) * (1 + x).pow_field(-a) * (1 - x * y).pow_field(c + a - 1)


def test_direct_sum_gates():
    with pytest.raises(Exception):
        family_series("pfq", {"a": [F(1, 2)], "c": [F(-2)]}, order=4)
    with pytest.raises((PochhammerPole, InadmissibleParameter)):
        family_series("horn_g2", {"a": F(1, 3), "c": F(1), "b1": F(1, 2), "b2": F(1, 5)},
                      order=4)


def test_homogenized_family_is_graded():
    p = {"a": F(1, 3), "c": F(5, 4), "b1": F(2, 5), "b2": F(1, 7)}
    flat = family_series("appell_f1", p, order=6)
    hom = family_series("appell_f1", p, order=6, homogenized=True)
    assert hom.vars == ("t", "x", "y") and hom.order == 12
    for (i, j), c in flat.terms().items():
        assert hom.coeff((i + j, i, j)) == c


def test_gauss_representation_at_order_14():
    p = {"a": [F(1, 2), F(1, 3)], "c": [F(5, 4)]}
    assert rep_series("pfq", p, order=14) == family_series("pfq", p, order=14)


REPS = {
    "appell_f1": ("a", "c", "b1", "b2"),
    "appell_f2": ("a", "b1", "b2", "c1", "c2"),
    "appell_f3": ("a1", "a2", "b1", "b2", "c"),
    "appell_f4": ("a", "b", "c", "d"),
    "horn_g2": ("a", "c", "b1", "b2"),
    "h4": ("a", "b", "c", "d"),
    "phi1": ("a", "b", "c"),
    "phi2": ("b1", "b2", "c"),
    "phi3": ("b", "c"),
}


@pytest.mark.parametrize("id", sorted(REPS))
def test_representation_matches_direct_sum(id):
    rng = random.Random(id)
    for _ in range(3):
        p = {k: rnd(rng) for k in REPS[id]}
        if id == "phi2":
            p["c"] = p["b2"] + rnd(rng)
        assert rep_series(id, p, order=8) == rep_oracle(id, p, order=8)


@pytest.mark.parametrize("pq", [(1, 1), (1, 2), (2, 2), (1, 3), (3, 3), (3, 2), (2, 3)])
def test_pfq_representation(pq):
    rng = random.Random(str(pq))
    p = {"a": [rnd(rng) for _ in range(pq[0])], "c": [rnd(rng) for _ in range(pq[1])]}
    assert rep_series("pfq", p, order=10) == family_series("pfq", p, order=10)


def test_no_representation_for_g3():
    with pytest.raises(InadmissibleParameter):
        rep_series("horn_g3", {"a": F(1, 3), "b": F(1, 5)})


def test_multivariate_f1_low_cases():
    a, c, b1, b2 = F(1, 3), F(5, 4), F(2, 5), F(1, 7)
    one = f1_multi_series(a, c, [b1], order=8, homogenized=False)
    assert one == family_series("pfq", {"a": [a, b1], "c": [c]}, order=8)
    two = f1_multi_series(a, c, [b1, b2], order=8).rename({"x1": "x", "x2": "y"})
    p = {"a": a, "c": c, "b1": b1, "b2": b2}
    assert two == family_series("appell_f1", p, order=8, homogenized=True)


def test_multivariate_f1_on_cube_roots():
    # slopes 1 - z for the nontrivial cube roots z collapse F1 to a 3F2 in (x/(x-1))^3
    a, b = F(2, 7), F(1, 3)
    z = QuadElem(F(-1, 2), F(1, 2), -3)
    f = f1_multi_series(a, 3 * b, [b, b], [1 - z, 1 - z * z], order=12, homogenized=False)
    (x,) = xy(12, ("x",))
    x = x.to_field(f.field)
    u = x * (x - 1).inv()
    inner = family_series("pfq", {"a": [a / 3, (a + 1) / 3, (a + 2) / 3],
                                  "c": [b + F(1, 3), b + F(2, 3)]}, order=12)
    rhs = (1 - x).pow_field(-a) * inner.to_field(f.field).compose({"x": u ** 3})
    assert f == rhs
    bumped = f1_multi_series(a + 1, 3 * b, [b, b], [1 - z, 1 - z * z], order=12,
                             homogenized=False)
    assert bumped != rhs


def test_series_evaluation_matches_float_sum():
    from hypseries.numeval import pfq_partial_sum
    a, b, c = F(1, 2), F(1, 3), F(5, 4)
    s = family_series("pfq", {"a": [a, b], "c": [c]}, order=60)
    x = 0.25
    assert abs(s.evaluate({"x": x}) - pfq_partial_sum([a, b], [c], x, max_terms=61)) < 1e-9
