from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from tiltcover.exactla import Matrix, inverse, kernel_basis, rank, solve


def M(rows):
    return Matrix.from_rows(rows)


def test_rank_examples():
    assert rank(Matrix(0, 0)) == 0
    assert rank(Matrix.identity(4)) == 4
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).cols == 0
    assert kernel_basis(Matrix(2, 3)).cols == 3
    K = kernel_basis(M([[1, 1]]))
    assert K.cols == 1
    a, b = K.columns()[0]
    assert a == -b != 0


def test_solve_examples():
    assert solve(Matrix.identity(2), [3, 4]) == [3, 4]
    assert solve(M([[1, 0], [1, 0]]), [1, 2]) is None
    assert solve(M([[2]]), [1]) == [Fraction(1, 2)]


def test_no_stored_zeros():
    m = M([[0, 1], [0, 0]])
    assert m.nnz == 1


small = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(small)
def test_rank_transpose(rows):
    m = M(rows)
    assert rank(m) == rank(m.T)


@settings(max_examples=60, deadline=None)
@given(small)
def test_kernel_is_null(rows):
    m = M(rows)
    K = kernel_basis(m)
    assert K.cols == m.cols - rank(m)
    assert (m @ K).nnz == 0


@settings(max_examples=60, deadline=None)
@given(small, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_exact(rows, x):
    m = M(rows)
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_inverse_roundtrip():
    m = M([[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(2)
