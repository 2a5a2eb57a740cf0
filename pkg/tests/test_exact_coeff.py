from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from errors import InterpolationFailure
from services.exact_coeff import QuadExt, RatFuncL, interpolate_poly, poly_l
from tests.strategies import fractions, quadext


@given(quadext(2), quadext(2), quadext(2))
def test_quadext_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(quadext(3))
def test_quadext_inverse(x):
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@pytest.mark.parametrize("e", range(-4, 5))
def test_v_power_squares_to_q_power(e):
    assert QuadExt.v_power(e, 2) * QuadExt.v_power(e, 2) == Fraction(2) ** e


def test_v_power_values():
    assert QuadExt.v_power(-1, 2) == QuadExt(Fraction(0), Fraction(1, 2), 2)
    assert QuadExt.v_power(3, 5) == QuadExt(Fraction(0), Fraction(5), 5)


def test_mixing_contexts_is_rejected():
    with pytest.raises(ValueError):
        QuadExt.of(1, 2) + QuadExt.of(1, 3)


@given(quadext(2))
def test_quadext_string_parses_back(x):
    assert QuadExt.parse(str(x), 2) == x


def test_lefschetz_powers():
    L = RatFuncL.lefschetz_power(1)
    assert RatFuncL.lefschetz_power(-2) * L * L == 1
    assert (L - 1).evaluate(2) == 1


def test_ratfunc_normal_form():
    L = RatFuncL.lefschetz_power(1)
    lhs = (L * L - 1) / (L - 1)
    assert lhs == L + 1
    assert str(lhs) == "L+1"


def test_ratfunc_pole():
    L = RatFuncL.lefschetz_power(1)
    with pytest.raises(ZeroDivisionError):
        (1 / (L - 2)).evaluate(2)


@given(fractions(), fractions())
def test_ratfunc_string_parses_back(a, b):
    L = RatFuncL.lefschetz_power(1)
    f = (L * a + b) / (L * L + 1)
    assert RatFuncL.parse(str(f)) == f


def test_interpolation_recovers_polynomial():
    poly = interpolate_poly([(2, 3), (3, 8), (5, 24), (7, 48)], 2)
    assert RatFuncL.of(poly) == RatFuncL.of(poly_l([-1, 0, 1]))


def test_interpolation_held_out_mismatch():
    with pytest.raises(InterpolationFailure) as exc:
        interpolate_poly([(2, 4), (3, 9), (5, 25)], 1)
    assert len(exc.value.samples) == 3


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_interpolation_is_exact_on_polynomials(coeffs):
    target = RatFuncL.of(poly_l(coeffs))
    samples = [(p, target.evaluate(p)) for p in (2, 3, 5, 7, 11)]
    assert RatFuncL.of(interpolate_poly(samples, 3)) == target
