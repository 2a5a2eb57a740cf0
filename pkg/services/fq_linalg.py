"""Exact linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p); the prime
travels alongside as an argument. Products are reduced after every
multiplication, which keeps values far below int64 range at desk scale.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from errors import CapExceeded


def mod_p(A, p: int) -> np.ndarray:
    """Entries reduced into [0, p)."""
    return np.asarray(np.asarray(A, dtype=np.int64) % p, dtype=np.int64)


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """A B over F_p."""
    return mod_p(np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64), p)


def inv_scalar(a: int, p: int) -> int:
    """a^{-1} in F_p."""
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    """The zero matrix."""
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    """The n x n identity."""
    return np.eye(n, dtype=np.int64)


def rref(A, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form over F_p.

    Returns:
        The reduced matrix, its rank and the list of pivot columns.
    """
    R = mod_p(A, p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    m, n = R.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        rows = np.nonzero(R[r:, c])[0]
        if rows.size == 0:
            continue
        piv = r + int(rows[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * inv_scalar(R[r, c], p)) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(A, p: int) -> int:
    """Rank over F_p."""
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return rref(A, p)[1]


def kernel_basis(A, p: int) -> np.ndarray:
    """Right null space of A; the columns of the result form a basis.

    The basis is the standard one read off the reduced echelon form, one
    vector per free column, so it is deterministic.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("kernel_basis expects a 2-D matrix")
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, r, pivots = rref(A, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-R[row, f]) % p
    return basis


def row_space(A, p: int) -> np.ndarray:
    """Rows of the reduced echelon form spanning the row space of A."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return zeros(0, A.shape[1] if A.ndim == 2 else 0)
    R, r, _ = rref(A, p)
    return R[:r]


def column_space(A, p: int) -> np.ndarray:
    """Columns forming a basis of the column space of A."""
    A = np.asarray(A, dtype=np.int64)
    return row_space(A.T, p).T.copy()


def complement_columns(A, p: int, n: int) -> np.ndarray:
    """Unit columns spanning a complement of col(A) inside F_p^n.

    Uses the non-pivot positions of the echelon form of the column space.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(n, 1)
    if A.shape[1] == 0:
        return identity(n)
    _, _, pivots = rref(A.T, p)
    free = [j for j in range(n) if j not in set(pivots)]
    out = zeros(n, len(free))
    for k, j in enumerate(free):
        out[j, k] = 1
    return out


def coordinates(B, Y, p: int) -> np.ndarray:
    """Solve B X = Y for X where B has full column rank.

    Raises:
        ValueError: if some column of Y is not in the span of B.
    """
    B = np.asarray(B, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    n, k = B.shape
    if Y.ndim == 1:
        Y = Y.reshape(n, 1)
    if k == 0:
        if np.any(mod_p(Y, p)):
            raise ValueError("vector outside the zero subspace")
        return zeros(0, Y.shape[1])
    R, _, pivots = rref(np.concatenate([B, Y], axis=1), p)
    if pivots[:k] != list(range(k)):
        raise ValueError("basis columns are not independent")
    if any(pc >= k for pc in pivots):
        raise ValueError("vector outside the spanned subspace")
    return R[:k, k:].copy()


def inv_mat(A, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over F_p. Raises if singular."""
    A = mod_p(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    R, _, _ = rref(np.concatenate([A, identity(n)], axis=1), p)
    if not np.array_equal(R[:, :n], identity(n)):
        raise ZeroDivisionError("matrix not invertible mod p")
    return R[:, n:].copy()


def is_invertible(A, p: int) -> bool:
    """Square and of full rank over F_p."""
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


@dataclass(frozen=True, eq=False)
class AffineSpace:
    """The solution set offset + span(basis) over F_p; basis vectors are columns."""

    offset: np.ndarray
    basis: np.ndarray
    p: int

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def cardinality(self) -> int:
        return self.p ** self.dim


def solve(A, b, p: int) -> AffineSpace | None:
    """Full solution set of A x = b, or None when the system is unsolvable."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    m, n = A.shape
    if b.shape[0] != m:
        raise ValueError(f"dimension mismatch: A is {m}x{n}, b has length {b.shape[0]}")
    R, _, pivots = rref(np.concatenate([A, b.reshape(m, 1)], axis=1), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, n]
    return AffineSpace(offset=x, basis=kernel_basis(A, p) if m else identity(n), p=p)


def check_cap(what: str, p: int, dim: int, cap: int) -> None:
    """Raise CapExceeded when p^dim elements would be enumerated past the cap."""
    size = p ** dim
    if size > cap:
        raise CapExceeded(what, size, cap)


def enumerate_span(basis: np.ndarray, p: int, cap: int) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    """Yield (coefficients, vector) for every element of the column span.

    Coefficient tuples run in lexicographic order, so the zero vector comes
    first.
    """
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[1]
    check_cap("span enumeration", p, k, cap)
    for coeffs in itertools.product(range(p), repeat=k):
        c = np.array(coeffs, dtype=np.int64)
        yield coeffs, mod_p(basis @ c, p) if k else np.zeros(basis.shape[0], dtype=np.int64)


def enumerate_affine(S: AffineSpace, cap: int) -> Iterator[np.ndarray]:
    """Yield each element of the affine space exactly once."""
    for _, vec in enumerate_span(S.basis, S.p, cap):
        yield mod_p(S.offset + vec, S.p)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces(n: int, k: int, p: int) -> Iterator[np.ndarray]:
    """Yield every k-dimensional subspace of F_p^n as a k x n RREF basis."""
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free_slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivot_set]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            M = zeros(k, n)
            for r, pc in enumerate(pivots):
                M[r, pc] = 1
            for (r, c), val in zip(free_slots, values):
                M[r, c] = val
            yield M
