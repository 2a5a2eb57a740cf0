"""Shared fixtures: the linear A2 quiver over F_2 and everything built on it."""
import pytest

from services.derived_cat import DerivedCategory, DObj
from services.derived_hall import DerivedHall
from services.quiver_rep import ModClass, build_catalog, parse_quiver_spec
from services.ringel_hall import RingelHall
from services.twisted_ext import TwistedExt


@pytest.fixture(scope="session")
def a2():
    return parse_quiver_spec("A2")


@pytest.fixture(scope="session")
def catalog(a2):
    return build_catalog(a2, 2)


@pytest.fixture(scope="session")
def catalog3(a2):
    return build_catalog(a2, 3)


@pytest.fixture(scope="session")
def ringel(catalog):
    return RingelHall(catalog)


@pytest.fixture(scope="session")
def derived(catalog):
    return DerivedCategory(catalog)


@pytest.fixture(scope="session")
def hall(derived):
    return DerivedHall(derived)


@pytest.fixture(scope="session")
def twisted(hall):
    return TwistedExt(hall)


@pytest.fixture(scope="session")
def mods():
    """S1, S2, P1 and 2S1 as module classes."""
    return {
        "S1": ModClass.parse("I[1,1]"),
        "S2": ModClass.parse("I[2,2]"),
        "P1": ModClass.parse("I[1,2]"),
        "2S1": ModClass.parse("2*I[1,1]"),
        "S1+S2": ModClass.parse("I[1,1]+I[2,2]"),
    }


@pytest.fixture(scope="session")
def objs():
    return {
        "0": DObj.zero(),
        "S1": DObj.parse("I[1,1]"),
        "S2": DObj.parse("I[2,2]"),
        "P1": DObj.parse("I[1,2]"),
        "2S1": DObj.parse("2*I[1,1]"),
        "2S2": DObj.parse("2*I[2,2]"),
        "S1+S2": DObj.parse("I[1,1]+I[2,2]"),
        "S2+P1": DObj.parse("I[2,2]+I[1,2]"),
    }
