import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypseries.field import QuadElem, quad_field
from hypseries.series import (ExponentOverflow, MixedField, MultiSeries, NonzeroConstantTerm,
                              VariableMismatch, ZeroConstantTerm, series_add, series_coeff,
                              series_compose, series_derivative, series_inv, series_make,
                              series_mul, series_pow_field, universe)

N = 8
rats = st.fractions(min_value=-20, max_value=20, max_denominator=20)


def X(n=N, vars=("x",), name="x", field=None):
    return MultiSeries.var(name, vars, n) if field is None else MultiSeries.var(name, vars, n, field)


@st.composite
def series(draw, vars=("x", "y"), order=N, unit=False, zero_const=False):
    u = universe(vars, order)
    coeffs = {e: draw(rats) for e in u.exps if draw(st.booleans())}
    if unit:
        coeffs[u.exps[0]] = F(1)
    if zero_const:
        coeffs.pop(u.exps[0], None)
    return MultiSeries.from_terms(vars, order, coeffs)


def test_make_and_print():
    assert str(series_make(("x",), 4, {(0,): 1, (1,): 1})) == "1 + x"
    assert str(series_make(("x", "y"), 3, {(1, 1): F(1, 2)})) == "1/2*x*y"
    with pytest.raises(ExponentOverflow):
        series_make(("x",), 4, {(5,): 1})


def test_basic_arithmetic():
    x = X(4)
    assert series_mul(1 + x, 1 - x) == 1 - x ** 2
    assert series_add(1 + x + x ** 2, -1 + x) == 2 * x + x ** 2
    geo = sum((x ** k for k in range(5)), MultiSeries.zero(("x",), 4))
    assert geo * (1 - x) == MultiSeries.one(("x",), 4)


def test_inverse():
    x = X(6)
    assert series_inv(1 - x) == sum((x ** k for k in range(7)), MultiSeries.zero(("x",), 6))
    one = MultiSeries.one(("x",), 6)
    assert series_inv(one) == one
    with pytest.raises(ZeroConstantTerm):
        series_inv(x)


def test_binomial_powers():
    x = X(6)
    half = series_pow_field(1 - x, -F(1, 2))
    assert [half.coeff((k,)) for k in range(3)] == [1, F(1, 2), F(3, 8)]
    assert series_pow_field(1 + 3 * x, 0) == MultiSeries.one(("x",), 6)
    assert series_pow_field((1 - x) ** 2, F(1, 2)) == 1 - x


def test_compose_examples():
    x, y = X(8), X(8, name="y", vars=("y",))
    outer = series_inv(1 - y)
    assert series_compose(outer, {"y": x * series_inv(x - 1)}) == 1 - x
    zero = MultiSeries.zero(("x",), 8)
    assert series_compose(outer, {"y": zero}) == MultiSeries.one(("x",), 8)
    with pytest.raises(NonzeroConstantTerm):
        outer.compose({"y": 1 + x})


def test_compose_into_two_variables():
    vars = ("x", "y")
    x, y = (MultiSeries.var(v, vars, 6) for v in vars)
    u, v = (MultiSeries.var(w, ("u", "v"), 6) for w in ("u", "v"))
    f = 1 + u + u * v
    s = series_inv(1 + x + y)
    assert f.compose({"u": y * s, "v": x * s}) == 1 + y * s + x * y * s * s


def test_compose_zero_outer():
    x = X(6)
    z = MultiSeries.zero(("y",), 6)
    assert z.compose({"y": x}).is_zero()


def test_derivative_coeff_euler():
    x = X(5)
    assert series_derivative(x ** 2, "x") == 2 * x
    vars = ("x", "y")
    xx, yy = (MultiSeries.var(v, vars, 4) for v in vars)
    assert series_coeff(1 + 3 * xx * yy ** 2, (1, 2)) == 3
    for n in range(6):
        assert (x ** n).euler("x") == n * x ** n


def test_derivative_lowers_reliable_order():
    x = X(5)
    d = (1 + x).derivative("x")
    assert d.reliable == 4
    assert d.first_mismatch(MultiSeries.one(("x",), 5) + x ** 5) is None


def test_variable_and_field_mismatch():
    with pytest.raises(VariableMismatch):
        X(4) + X(4, vars=("y",), name="y")
    K3, K1 = quad_field(-3), quad_field(-1)
    a = MultiSeries.constant(("x",), 3, QuadElem(0, 1, -3), K3)
    b = MultiSeries.constant(("x",), 3, QuadElem(0, 1, -1), K1)
    with pytest.raises(MixedField):
        a + b


def test_rational_promotes_into_quadratic_field():
    K = quad_field(-3)
    w = MultiSeries.constant(("x",), 3, QuadElem(0, 1, -3), K)
    s = w * (1 + X(3)) + 1
    assert s.field == K and s.coeff((1,)) == QuadElem(0, 1, -3)


def test_json_round_trip():
    K = quad_field(-1)
    x = X(5, field=K)
    s = series_pow_field(1 - x * QuadElem(1, 1, -1), F(1, 3))
    back = MultiSeries.from_json(json.dumps(s.to_json()))
    assert back == s and back.field == K


def test_with_vars_and_rename():
    x = X(4)
    s = (1 + x).with_vars(("t", "x"))
    assert s.vars == ("t", "x") and s.coeff((0, 1)) == 1
    assert (1 + x).rename({"x": "z"}).vars == ("z",)


def test_revert():
    x = X(8)
    f = x * series_inv(1 + x)  # inverse is x/(1-x)
    assert f.revert() == x * series_inv(1 - x)


def test_ring_axioms_on_many_random_triples():
    rng = random.Random(8)
    u = universe(("x", "y"), N)

    def rand():
        return MultiSeries.from_terms(u.vars, N, {e: F(rng.randint(-9, 9), rng.randint(1, 9))
                                                  for e in u.exps if rng.random() < 0.5})

    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a + b) - b == a


@settings(max_examples=60, deadline=None)
@given(series(unit=True))
def test_inverse_is_two_sided(a):
    one = MultiSeries.one(a.vars, a.order)
    assert a * a.inv() == one and a.inv() * a == one


@settings(max_examples=40, deadline=None)
@given(series(vars=("x",), unit=True), rats, rats)
def test_power_law(a, p, q):
    assert series_pow_field(a, p) * series_pow_field(a, q) == series_pow_field(a, p + q)


@settings(max_examples=40, deadline=None)
@given(series(vars=("y",)), series(vars=("z",), zero_const=True),
       series(vars=("x",), zero_const=True))
def test_composition_is_associative(f, g, h):
    left = f.compose({"y": g}).compose({"z": h})
    right = f.compose({"y": g.compose({"z": h})})
    assert left == right
