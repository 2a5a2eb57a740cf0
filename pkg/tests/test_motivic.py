import itertools
from fractions import Fraction

import pytest

from errors import ConfigError, InterpolationFailure
from services.derived_cat import DObj
from services.exact_coeff import RatFuncL
from services.motivic import AutMotive, Motivic, count_poly, lefschetz, motivic_element

L = RatFuncL.lefschetz_power(1)


@pytest.fixture(scope="module")
def mot(a2):
    return Motivic(a2)


def test_count_poly_fits_and_holds_out():
    poly = count_poly(lambda p: p * p - 1, [2, 3, 5, 7, 11], 2)
    assert poly.value == L * L - 1
    assert poly.primes == (2, 3, 5)
    assert poly.held_out == (7,)


def test_count_poly_needs_enough_primes():
    with pytest.raises(ConfigError):
        count_poly(lambda p: p, [2, 3], 1)


def test_count_poly_rejects_non_polynomial_counts():
    with pytest.raises(InterpolationFailure):
        count_poly(lambda p: 2**p, [2, 3, 5, 7], 2)


def test_needs_two_primes(a2):
    with pytest.raises(ConfigError):
        Motivic(a2, primes=[2])


def test_lefschetz_helper():
    assert lefschetz([-1, 0, 1]) == L * L - 1
    assert motivic_element({DObj.zero(): 3})[DObj.zero()] == RatFuncL.of(3)


def test_upsilon_of_automorphisms(mot, objs):
    motive = mot.upsilon_aut(objs["2S1"])
    assert motive == AutMotive(1, ((1, 2),))
    assert str(motive) == "L^1*(L^1-1)*(L^2-1)"
    assert mot.upsilon(objs["2S1"]) == L * (L - 1) * (L * L - 1)
    assert motive.evaluate(2) == 6
    assert mot.upsilon(objs["S2+P1"]).evaluate(2) == Fraction(2)


@pytest.mark.parametrize("key", ["S1", "2S1", "S2+P1", "S1+S2"])
def test_upsilon_specializes_to_automorphism_counts(mot, objs, key):
    assert mot.upsilon_oracle_check(objs[key])


def test_hall_products(mot, objs):
    assert mot.hall_products(objs["S2"], objs["S1"]) == {objs["S1+S2"]: RatFuncL.of(1), objs["P1"]: L - 1}
    assert mot.hall_products(objs["S1"], objs["S1"]) == {objs["2S1"]: RatFuncL.lefschetz_power(-1)}


def test_t_products(mot, objs):
    u = mot.algebra.u
    assert mot.mot_T_mul(u(objs["S1"]), u(objs["S1"])) == u(objs["2S1"]).scale(L + 1)
    assert mot.mot_hall_mul(mot.v(objs["S2"]), mot.v(objs["S1"])) == mot.v(objs["S1+S2"]) + mot.v(objs["P1"]).scale(L - 1)


@pytest.mark.parametrize("z,l,m", [("S2", "S1", "P1"), ("S1", "S1", "2S1")])
def test_motivic_riedtmann_peng(mot, objs, z, l, m):
    lhs, rhs = mot.mot_rp_sides(objs[z], objs[l], objs[m])
    assert lhs == rhs


def test_lemma_space_on_simple_into_projective(mot, objs):
    dc = mot.base
    (l,) = dc.cone_strata(objs["S2"], objs["P1"])[objs["S1"]]
    first, second = mot.lemma_space_sides(l)
    assert first[0] == first[1]
    assert second[0] == second[1]
    assert mot.lemma_space_check(l)


def test_phi_is_multiplicative(mot, objs):
    basis = [objs[k] for k in ("0", "S1", "S2", "P1")] + [objs["S1"].shift(1)]
    for X, Y in itertools.product(basis, repeat=2):
        assert mot.mot_phi_check(mot.v(X), mot.v(Y)), (X, Y)


@pytest.mark.parametrize("x,y", [("S2", "S1"), ("S1", "S2"), ("S1", "S1"), ("P1", "S1")])
def test_partition_and_specialization(mot, objs, x, y):
    assert mot.partition_check(objs[x], objs[y])
    assert mot.specialization_check(objs[x], objs[y], 7)


def test_shifted_objects_specialize(mot, objs):
    S1, S2 = objs["S1"], objs["S2"]
    assert mot.specialization_check(S1, S1.shift(1))
    assert mot.specialization_check(S2.shift(-1), S1)
