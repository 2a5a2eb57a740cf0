import itertools
from fractions import Fraction

import pytest

from services.derived_cat import DObj
from services.exact_coeff import QuadExt
from services.twisted_ext import Sweep, et_basis, kclass_of

ZERO = (0, 0)


def test_kclasses(objs):
    assert kclass_of(objs["P1"], 2) == (1, 1)
    assert kclass_of(objs["S1"].shift(1), 2) == (-1, 0)
    assert kclass_of(DObj.parse("I[1,1]+I[1,1][1]"), 2) == (0, 0)


def test_twisted_product_of_simples(twisted, objs):
    v_inv = QuadExt(Fraction(0), Fraction(1, 2), 2)
    assert twisted.plus_products((ZERO, objs["S1"]), (ZERO, objs["S2"])) == {(ZERO, objs["S1+S2"]): v_inv}


def test_torus_twist_signs(twisted, objs):
    a, b = (ZERO, objs["S1"]), ((1, 0), objs["S2"])
    assert twisted.plus_products(a, b) == {((1, 0), objs["S1+S2"]): twisted.v(-3)}
    assert twisted.minus_products(a, b) == {((1, 0), objs["S1+S2"]): twisted.v(1)}


def test_euler_of_objects(twisted, objs):
    assert twisted.euler_of_objects(objs["S1"], objs["S2"]) == -1
    assert twisted.euler_of_objects(objs["S2"], objs["S1"]) == 0
    assert twisted.euler_of_objects(objs["S1"].shift(1), objs["S2"]) == 1
    assert twisted.euler_of_objects(objs["P1"], objs["P1"]) == 1


def test_kclasses_add_along_triangles(twisted, objs):
    basis = [objs[k] for k in ("0", "S1", "S2", "P1")] + [objs["S2"].shift(1)]
    for X, Y in itertools.product(basis, repeat=2):
        assert twisted.kclass_triangle_check(X, Y)


@pytest.mark.parametrize("variant", ["plus", "minus"])
def test_associativity(twisted, objs, variant):
    objects = [objs["S1"], objs["S2"], objs["S1"].shift(1)]
    keys = [(ZERO, X) for X in objects] + [((1, -1), objs["P1"])]
    for a, b, c in itertools.product(keys, repeat=3):
        assert twisted.assoc_check(a, b, c, variant), (a, b, c)


def test_pairing_identity(twisted, objs):
    one = QuadExt.of(1, 2)
    b, c = ((1, 0), objs["S2"]), ((0, 1), objs["S1"])
    for L in twisted.hall.middle_terms(objs["S2"], objs["S1"]):
        a = ((1, 1), L)
        lhs, rhs = twisted.pairing_identity_sides({a: one}, {b: one}, {c: one})
        assert lhs == rhs


def test_drinfeld_dual_phi(twisted, objs):
    keys = [(ZERO, objs["S1"]), (ZERO, objs["S2"]), ((1, 0), objs["P1"])]
    for a, b in itertools.product(keys, repeat=2):
        assert twisted.dr_phi_check(a, b)


def test_pairing_is_diagonal_in_objects(twisted, objs):
    x = et_basis(ZERO, objs["S1"], 2)
    y = et_basis(ZERO, objs["S2"], 2)
    assert not twisted.pairing(x, y)
    assert twisted.pairing(x, x) == QuadExt.of(1, 2)


def test_euler_sides_on_sums(twisted, objs):
    assert twisted.euler_sides(objs["S1"], objs["S2"]) == (-1, -1)
    assert twisted.euler_sides(objs["S1+S2"], objs["P1"]) == (1, 1)
    total, by_classes = twisted.euler_sides(objs["S2+P1"], objs["S1"].shift(-1))
    assert total == by_classes


@pytest.mark.parametrize("variant", ["plus", "minus"])
def test_assoc_sweep_matches_direct_products(twisted, objs, variant):
    X, Y, Z = objs["S1"], objs["S2"], objs["S1"].shift(1)
    sweep = twisted.assoc_sweep(X, Y, Z, variant)
    triples = list(itertools.product(twisted.keys([X]), twisted.keys([Y]), twisted.keys([Z])))
    direct = sum(twisted.assoc_check(a, b, c, variant) for a, b, c in triples)
    assert sweep.total == len(triples) == 729
    assert sweep.agreeing == direct == 729
    assert sweep.first_failure is None


def test_assoc_sweep_with_sum_objects(twisted, objs):
    sweep = twisted.assoc_sweep(objs["S1+S2"], objs["P1"], objs["2S2"], "plus")
    assert sweep.passed and sweep.total == 729


def test_pairing_sweep_covers_every_class(twisted, objs):
    Y, W = objs["S2"], objs["S1"]
    sweep = twisted.pairing_sweep(Y, W)
    assert sweep.total == 9 * 9 * 9 * len(twisted.hall.middle_terms(Y, W))
    assert sweep.passed, sweep.first_failure


def test_sweep_keeps_first_failure():
    sweep = Sweep()
    sweep.add(3, True, "a")
    sweep.add(2, False, "b")
    sweep.add(1, False, "c")
    other = Sweep(4, 4)
    sweep.merge(other)
    assert (sweep.agreeing, sweep.total, sweep.first_failure) == (7, 10, "b")
    assert not sweep.passed
