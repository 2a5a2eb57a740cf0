from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.derived_cat import DObj
from services.octahedron import Instance, Octahedron, generate_instances
from tests.strategies import a2_objects


@pytest.fixture(scope="module")
def worked(derived):
    inst = Instance(
        X=DObj.parse("I[2,2]"),
        Y=DObj.parse("I[1,1]"),
        Z=DObj.parse("I[2,2]"),
        M=DObj.parse("I[2,2]+I[1,2]"),
        L=DObj.parse("I[1,2]"),
        Lp=DObj.parse("2*I[2,2]"),
    )
    return Octahedron(derived, inst)


def test_side_sizes(worked):
    assert len(worked.side_one()) == 2
    assert len(worked.side_two()) == 12


def test_counts(worked):
    counts = worked.counts()
    assert counts.h_stratum == 1
    assert counts.double_cone_one == 2
    assert counts.double_cone_two == 12


def test_symmetry_one(worked):
    lhs, rhs = worked.symmetry1_sides()
    assert lhs == rhs == 2


def test_symmetry_two(worked):
    report = worked.symmetry2()
    assert report.f_surjective
    assert report.m_surjective
    assert report.f_fibers == [1]
    assert report.f_kernels == [1] and report.f_expected == 1
    # three distinct m', each sending two completions onto the nonzero h
    assert report.m_fibers == [2, 2, 2]
    assert report.m_kernels == [2, 2, 2] and report.m_expected == 2
    assert report.third_sides == (1, 1)
    assert report.closed_form_fibers
    assert report.passed, report.notes


def test_symmetry_two_when_stratum_cuts_the_kernel(derived):
    inst = Instance(
        X=DObj.zero(),
        Y=DObj.parse("I[1,1]"),
        Z=DObj.parse("I[1,1][-1]"),
        M=DObj.zero(),
        L=DObj.parse("I[1,1]"),
        Lp=DObj.parse("I[1,1][-1]"),
    )
    report = Octahedron(derived, inst).symmetry2()
    assert report.f_fibers == [1] and report.m_fibers == [1]
    assert report.f_kernels == [2] and report.f_expected == 2
    assert report.m_kernels == [2] and report.m_expected == 2
    assert report.third_sides == (Fraction(1), Fraction(1))
    assert not report.closed_form_fibers
    assert report.passed, report.notes


def test_generated_instances_hold(derived, objs):
    objects = [objs[k] for k in ("0", "S1", "S2", "P1")]
    instances = generate_instances(derived, objects, limit=6)
    assert 0 < len(instances) <= 6
    for inst in instances:
        octa = Octahedron(derived, inst)
        assert octa.symmetry1_check(), str(inst)
        assert octa.symmetry2_check(), str(inst)


def test_included_instances_come_first(derived, worked, objs):
    instances = generate_instances(derived, [objs["S1"]], limit=3, include=[worked.inst])
    assert instances[0] == worked.inst


@settings(max_examples=15, deadline=None)
@given(st.lists(a2_objects(max_summands=1), min_size=1, max_size=3, unique=True))
def test_generated_shifted_instances_hold(derived, objects):
    for inst in generate_instances(derived, objects, limit=3):
        octa = Octahedron(derived, inst)
        assert octa.symmetry1_check(), str(inst)
        report = octa.symmetry2()
        assert report.passed, f"{inst}: {report.notes}"
