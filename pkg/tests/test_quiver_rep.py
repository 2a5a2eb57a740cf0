import pytest
from hypothesis import given, strategies as st

from errors import ConfigError, NotTypeA
from services.quiver_rep import (
    ModClass,
    Quiver,
    aut_order_bruteforce,
    brute_force_indecomposables,
    build_catalog,
    euler_form,
    extension_strata,
    gl_order,
    hall_number,
    parse_quiver_spec,
)
from tests.strategies import A2_LABELS


@pytest.mark.parametrize("spec,arrows", [("A1", ()), ("A2", ((0, 1),)), ("A3:><", ((0, 1), (2, 1)))])
def test_parse_quiver_spec(spec, arrows):
    Q = parse_quiver_spec(spec)
    assert Q.arrows == arrows
    assert Q.is_type_a


@pytest.mark.parametrize("spec", ["B2", "A0", "A3:>", "A2:x"])
def test_parse_quiver_spec_rejects(spec):
    with pytest.raises(ConfigError):
        parse_quiver_spec(spec)


def test_cyclic_quiver_is_rejected():
    with pytest.raises(ConfigError):
        Quiver(2, ((0, 1), (1, 0)))


def test_catalog_needs_type_a():
    star = Quiver(4, ((0, 1), (0, 2), (0, 3)))
    with pytest.raises(NotTypeA):
        build_catalog(star, 2)


def test_a2_tables(catalog, mods):
    S1, S2, P1 = mods["S1"], mods["S2"], mods["P1"]
    assert len(catalog.labels) == 3
    assert catalog.hom_dim(S2, P1) == 1
    assert catalog.hom_dim(P1, S1) == 1
    assert catalog.hom_dim(S1, S2) == 0
    assert catalog.ext_dim(S1, S2) == 1
    assert catalog.ext_dim(S2, S1) == 0


def test_euler_form(a2):
    assert euler_form(a2, (1, 0), (0, 1)) == -1
    assert euler_form(a2, (0, 1), (1, 0)) == 0
    assert euler_form(a2, (1, 1), (1, 1)) == 1


@pytest.mark.parametrize("m,p,expected", [(1, 2, 1), (2, 2, 6), (2, 3, 48), (3, 2, 168)])
def test_gl_order(m, p, expected):
    assert gl_order(m, p) == expected


def test_aut_orders(catalog, catalog3, mods):
    assert catalog.aut_order(mods["2S1"]) == 6
    assert catalog3.aut_order(mods["2S1"]) == 48
    assert catalog.aut_order(mods["S1+S2"]) == 1
    assert catalog.aut_order(ModClass.parse("I[2,2]+I[1,2]")) == 2


@pytest.mark.parametrize("text", ["I[1,1]", "2*I[1,1]", "I[2,2]+I[1,2]", "I[1,1]+I[2,2]"])
def test_aut_order_matches_enumeration(catalog, text):
    cls = ModClass.parse(text)
    assert catalog.aut_order(cls) == aut_order_bruteforce(catalog.rep_of(cls))


@given(st.dictionaries(st.sampled_from(A2_LABELS), st.integers(1, 2), max_size=3))
def test_iso_class_recovers_summands(counts):
    catalog = build_catalog(parse_quiver_spec("A2"), 2)
    cls = ModClass.of(counts)
    assert catalog.iso_class(catalog.rep_of(cls)) == cls


def test_modclass_addition_and_parse():
    assert ModClass.parse("I[1,1]") + ModClass.parse("I[1,1]") == ModClass.parse("2*I[1,1]")
    assert not ModClass.zero()
    cls = ModClass.parse("I[2,2]+2*I[1,2]")
    assert ModClass.parse(str(cls)) == cls
    assert cls.dimvec(2) == (2, 3)


def test_brute_force_indecomposables_agree_with_intervals(a2, catalog):
    found = brute_force_indecomposables(a2, 2, (1, 1))
    assert sorted(str(catalog.iso_class(M)) for M in found) == sorted(
        str(ModClass.of([label])) for label in catalog.labels
    )


def test_classes_bounds(catalog):
    assert len(catalog.classes(2)) == 7
    assert len(catalog.classes(2, max_summands=1)) == 4


def test_hall_numbers(catalog, mods):
    S1, S2, P1 = mods["S1"], mods["S2"], mods["P1"]
    assert hall_number(catalog, P1, S2, S1) == 1
    assert hall_number(catalog, P1, S1, S2) == 0
    assert hall_number(catalog, mods["S1+S2"], S2, S1) == 1
    assert hall_number(catalog, mods["2S1"], S1, S1) == 3


def test_extension_strata(catalog, mods):
    strata = extension_strata(catalog, mods["S2"], mods["S1"])
    assert strata == {mods["S1+S2"]: 1, mods["P1"]: 1}
    assert extension_strata(catalog, mods["S1"], mods["S2"]) == {mods["S1+S2"]: 1}
