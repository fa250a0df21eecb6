from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cusp_atlas import linalg

from strategies import invertible_matrices


@given(st.integers(1, 4).flatmap(lambda n: invertible_matrices(n)))
def test_inverse(m):
    assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(len(m))


def test_inverse_singular():
    with pytest.raises(ValueError):
        linalg.inverse([[1, 2], [2, 4]])


def test_solve_integer_input_stays_exact():
    assert linalg.solve([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))


def test_solve_inconsistent():
    with pytest.raises(ValueError):
        linalg.solve([[1, 1], [2, 2]], [1, 3])


def test_det_and_matpow():
    assert linalg.det([[1, 2], [3, 4]]) == -2
    assert linalg.matpow([[1, 1], [0, 1]], 5) == linalg.as_matrix([[1, 5], [0, 1]])


def test_det_integer_input_is_exact():
    assert linalg.det([[-3, -1, 0], [1, 0, -1], [1, 1, 2]]) == 0
