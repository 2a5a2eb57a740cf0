import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import CapExceeded
from services import fq_linalg as fq
from tests.strategies import matrices


@given(st.data())
def test_rref_is_idempotent(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    A = data.draw(matrices(p))
    R, r, pivots = fq.rref(A, p)
    R2, r2, pivots2 = fq.rref(R, p)
    assert np.array_equal(R, R2)
    assert (r, pivots) == (r2, pivots2)


@given(st.data())
def test_rank_nullity(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    A = data.draw(matrices(p))
    K = fq.kernel_basis(A, p)
    assert fq.rank(A, p) + K.shape[1] == A.shape[1]
    assert not np.any(fq.matmul(A, K, p))


@settings(max_examples=50)
@given(st.data())
def test_solution_count_matches_enumeration(data):
    p = data.draw(st.sampled_from([2, 3]))
    A = data.draw(matrices(p, max_rows=3, max_cols=3))
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=A.shape[0], max_size=A.shape[0])))
    S = fq.solve(A, b, p)
    brute = sum(
        1
        for x in np.ndindex(*([p] * A.shape[1]))
        if np.array_equal(fq.matmul(A, np.array(x).reshape(-1, 1), p).reshape(-1), b % p)
    )
    assert (S.cardinality if S is not None else 0) == brute


def test_unsolvable_returns_none():
    A = np.array([[1, 0], [1, 0]])
    assert fq.solve(A, np.array([0, 1]), 2) is None


def test_inverse():
    A = np.array([[1, 1], [0, 1]])
    assert np.array_equal(fq.matmul(A, fq.inv_mat(A, 3), 3), fq.identity(2))
    with pytest.raises(ZeroDivisionError):
        fq.inv_mat(np.array([[1, 1], [1, 1]]), 2)


@pytest.mark.parametrize("n,k,p,expected", [(2, 1, 2, 3), (3, 1, 2, 7), (4, 2, 2, 35), (2, 1, 3, 4)])
def test_gaussian_binomial(n, k, p, expected):
    assert fq.gaussian_binomial(n, k, p) == expected
    assert sum(1 for _ in fq.enumerate_subspaces(n, k, p)) == expected


def test_enumeration_cap():
    with pytest.raises(CapExceeded) as exc:
        list(fq.enumerate_span(fq.identity(5), 2, cap=16))
    assert exc.value.size == 32


def test_coordinates():
    B = np.array([[1, 0], [0, 1], [1, 1]])
    Y = np.array([[1], [1], [0]])
    assert np.array_equal(fq.coordinates(B, Y, 2), np.array([[1], [1]]))
    with pytest.raises(ValueError):
        fq.coordinates(B, np.array([[1], [0], [0]]), 2)
