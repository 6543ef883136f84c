import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypseries.field import (CC, QQ, DivisionByZero, FieldParseError, MixedDiscriminant,
                             MixedRepresentation, NonSquarefreeDiscriminant, QuadElem,
                             ZeroDenominator, common_field, conj, field_arith, format_field,
                             is_integer, is_nonpositive_int_shifted, make_field, parse_field,
                             quad_field, to_float_complex)

rats = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def quads(d):
    return st.builds(lambda r, s: QuadElem(r, s, d), rats, rats)


def test_rational_sum():
    assert field_arith(F(1, 2), F(1, 3), "add") == F(5, 6)


def test_conjugate_pair_product_is_three():
    z = make_field("quad", F(3, 2), F(1, 2), -3)
    assert field_arith(z, conj(z), "mul") == 3
    assert z + conj(z) == 3


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith(F(1), F(0), "div")
    with pytest.raises(ZeroDivisionError):
        QuadElem(1, 1, -1) / QuadElem(0, 0, -1)


def test_mixing_errors():
    with pytest.raises(MixedDiscriminant):
        field_arith(QuadElem(1, 1, -3), QuadElem(1, 1, -1), "add")
    with pytest.raises(MixedRepresentation):
        field_arith(F(1), 1.5 + 0j, "add")
    with pytest.raises(MixedRepresentation):
        QuadElem(1, 1, -3) + 0.5
    with pytest.raises(MixedDiscriminant):
        common_field(quad_field(-3), quad_field(-1))


def test_make_field():
    assert make_field("rational", 6, 4) == F(3, 2)
    with pytest.raises(ZeroDenominator):
        make_field("rational", 1, 0)
    with pytest.raises(NonSquarefreeDiscriminant):
        make_field("quad", 1, 1, 12)
    i = make_field("quad", 0, 1, -1)
    assert i * i == -1 and i ** 4 == 1


def test_lower_parameter_gate():
    assert not is_nonpositive_int_shifted(F(5, 4))
    assert is_nonpositive_int_shifted(F(-2))
    assert is_nonpositive_int_shifted(0)
    assert not is_nonpositive_int_shifted(1)
    assert not is_nonpositive_int_shifted(QuadElem(-1, 1, -3))


def test_float_realization():
    assert to_float_complex(F(1, 2)) == 0.5 + 0j
    w = to_float_complex(QuadElem(F(3, 2), F(1, 2), -3))
    assert abs(w - (1.5 + 0.8660254037844386j)) < 1e-15
    v = 0.25 - 2j
    assert to_float_complex(v) == v


def test_common_field_embeds_rationals():
    K = quad_field(-3)
    assert common_field(QQ, K) == K
    assert common_field(QQ, QQ) == QQ
    assert common_field(CC) == CC


def test_integrality():
    assert is_integer(F(4, 2)) and not is_integer(F(1, 2))
    assert is_integer(QuadElem(3, 0, -1)) and not is_integer(QuadElem(3, 1, -1))


@pytest.mark.parametrize("text,value", [
    ("3/2", F(3, 2)),
    ("-7", F(-7)),
    ("3/2+1/2*sqrt(-3)", QuadElem(F(3, 2), F(1, 2), -3)),
    ("sqrt(-1)", QuadElem(0, 1, -1)),
    ("1-sqrt(2)", QuadElem(1, -1, 2)),
    ("0.25", 0.25 + 0j),
    ("1.5-2j", 1.5 - 2j),
])
def test_parse(text, value):
    assert parse_field(text) == value


def test_parse_errors():
    for bad in ("", "1/2x", "2**3"):
        with pytest.raises(FieldParseError):
            parse_field(bad)
    with pytest.raises(MixedDiscriminant):
        parse_field("sqrt(-3)+sqrt(-1)")


@given(rats)
def test_rational_text_round_trip(q):
    assert parse_field(format_field(q)) == q


@given(quads(-3))
def test_quad_text_round_trip(z):
    back = parse_field(format_field(z))
    assert isinstance(back, QuadElem) and back == z and back.d == -3


@settings(max_examples=1000, deadline=None)
@given(rats, rats, rats)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


@settings(max_examples=1000, deadline=None)
@given(quads(-3), quads(-3), quads(-3))
def test_quad_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(quads(-1), quads(-1))
def test_conjugation_is_involutive_homomorphism(a, b):
    assert conj(conj(a)) == a
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(a + b) == conj(a) + conj(b)


@given(quads(-3), quads(-3))
def test_float_realization_is_homomorphism(a, b):
    fa, fb = to_float_complex(a), to_float_complex(b)
    scale = max(1.0, abs(fa) * abs(fb))
    assert cmath.isclose(to_float_complex(a * b), fa * fb, abs_tol=1e-12 * scale)
    assert cmath.isclose(to_float_complex(a + b), fa + fb, abs_tol=1e-12 * max(1.0, abs(fa + fb)))
