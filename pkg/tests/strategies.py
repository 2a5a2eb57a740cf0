"""hypothesis strategies for field elements, matrices over F_p and catalog keys."""
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from services.derived_cat import DObj
from services.exact_coeff import QuadExt

PRIMES = st.sampled_from([2, 3, 5, 7])
A2_LABELS = [(1, 1), (2, 2), (1, 2)]


def fractions(bound: int = 20):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def quadext(q: int):
    return st.builds(QuadExt, fractions(), fractions(), st.just(q))


@st.composite
def matrices(draw, p: int, max_rows: int = 4, max_cols: int = 4):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return np.array(flat, dtype=np.int64).reshape(rows, cols)


@st.composite
def a2_objects(draw, shifts=(-1, 0, 1), max_summands: int = 2):
    atoms = draw(
        st.lists(st.tuples(st.sampled_from(A2_LABELS), st.sampled_from(shifts)), min_size=0, max_size=max_summands)
    )
    return DObj.of(atoms)
