from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cychom.errors import DimensionMismatch, DivisionByZero, IndexOutOfRange, ParseError
from cychom.exact_linalg import (I, ONE, ZERO, Scalar, SparseMatrix, field_arithmetic, format_scalar,
                                 independent_columns, kernel_basis, linear_solve_rank, parse_scalar, rank,
                                 solve, solve_many)

import oracles

small = st.integers(-6, 6)
scalars = st.builds(lambda a, b, c, d: Scalar(Fraction(a, b), Fraction(c, d)),
                    small, st.integers(1, 5), small, st.integers(1, 5))


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.lists(st.one_of(st.just(ZERO), scalars), min_size=c, max_size=c),
                            min_size=r, max_size=r))
    return SparseMatrix.from_dense(entries)


@pytest.mark.parametrize("text,canon", [
    ("3", "3"), ("-4/6", "-2/3"), ("1/2+3/4i", "1/2+3/4i"), ("i", "0+1i"), ("-i", "0-1i"),
    ("2i", "0+2i"), ("0-5i", "0-5i"), ("7/1", "7"), (" 5 ", "5"), ("0+0i", "0"),
])
def test_literal_grammar(text, canon):
    assert format_scalar(parse_scalar(text)) == canon


@pytest.mark.parametrize("bad", ["1//2", "1/0", "", "1.5", "1+i", "abc", "1/2/3", "--1", "1e3"])
def test_malformed_literals(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_non_string_literal():
    with pytest.raises(ParseError):
        parse_scalar(3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Scalar.coerce(0.5)
    with pytest.raises(TypeError):
        Scalar.coerce(1j)


@given(scalars)
def test_format_roundtrip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


def test_i_squared():
    assert I * I == -ONE
    assert (ONE + I) * (ONE - I) == Scalar(2)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(DivisionByZero):
        field_arithmetic("1", "0", "/")


def test_field_arithmetic_dispatch():
    assert field_arithmetic("1/2", "1/3", "+") == parse_scalar("5/6")
    assert field_arithmetic("i", "i", "*") == -ONE
    with pytest.raises(ValueError):
        field_arithmetic(1, 2, "^")


@given(matrices())
def test_rank_matches_fraction_oracle(A):
    assert rank(A) == oracles.gauss_rank_fraction(A.to_dense())


@given(matrices())
def test_rank_nullity_and_kernel(A):
    K = kernel_basis(A)
    assert rank(A) + len(K) == A.ncols
    for v in K:
        assert A.apply(v) == {}
    if K:
        assert rank(SparseMatrix.from_columns(A.ncols, K)) == len(K)


@given(matrices(), st.data())
def test_solve_consistent_rhs(A, data):
    x = {j: data.draw(scalars) for j in range(A.ncols)}
    b = A.apply(x)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


def test_solve_inconsistent():
    A = SparseMatrix.from_dense([[1, 1], [2, 2]])
    assert solve(A, {0: ONE}) is None
    assert solve_many(A, [{0: ONE, 1: Scalar(2)}, {1: ONE}])[1] is None


def test_frozen_rank_example():
    # rows (1, i, 0), (i, -1, 0), (0, 0, 1/2): the second row is i times the first
    A = SparseMatrix.from_dense([["1", "i", "0"], ["i", "-1", "0"], ["0", "0", "1/2"]])
    assert rank(A) == 2
    assert independent_columns(A) == [0, 2]
    (k,) = kernel_basis(A)
    assert A.apply(k) == {}


def test_transpose_and_product():
    A = SparseMatrix.from_dense([[1, 2], [0, "i"], [3, 0]])
    B = SparseMatrix.from_dense([[1, 0, 1], [2, 1, 0]])
    assert (A @ B).T == B.T @ A.T
    with pytest.raises(DimensionMismatch):
        A @ A


def test_linear_solve_rank_modes():
    A = SparseMatrix.from_dense([[1, 0], [0, 0]])
    assert linear_solve_rank(A, "rank") == 1
    assert len(linear_solve_rank(A, "kernel")) == 1
    assert linear_solve_rank(A, "solve", {0: Scalar(3)}) == {0: Scalar(3)}
    with pytest.raises(ValueError):
        linear_solve_rank(A, "solve")
    with pytest.raises(IndexOutOfRange):
        solve(A, {5: ONE})


def test_large_entries_stay_exact():
    n = 12
    H = SparseMatrix.from_dense([[Scalar(Fraction(1, i + j + 1)) for j in range(n)] for i in range(n)])
    assert rank(H) == n
    b = H.apply({0: ONE})
    assert solve(H, b) == {0: ONE}
