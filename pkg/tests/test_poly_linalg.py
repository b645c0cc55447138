from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from binlog_pade import linalg, poly

q = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def square(n):
    return st.lists(st.lists(q, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 5).flatmap(square))
def test_det_matches_sympy(M):
    expected = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in M]).det()
    assert linalg.det(M) == Fraction(str(expected))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(q, min_size=n + 1, max_size=n + 1), min_size=n, max_size=n)))
def test_kernel_vectors_are_annihilated(M):
    basis = linalg.kernel(M)
    assert len(basis) == len(M[0]) - linalg.rank(M)
    for v in basis:
        assert all(x == 0 for x in linalg.matvec(M, v))


def test_det_needs_row_swap():
    assert linalg.det([[0, 1], [1, 0]]) == -1
    assert linalg.det([[0, 0], [1, 2]]) == 0


def test_kernel_of_zero_matrix_is_everything():
    assert len(linalg.kernel([[0, 0, 0]])) == 3


@given(st.lists(q, min_size=1, max_size=6), st.lists(q, min_size=1, max_size=6), q)
def test_mul_evaluates(p1, p2, x):
    assert poly.evaluate(poly.mul(p1, p2), x) == poly.evaluate(p1, x) * poly.evaluate(p2, x)


@given(st.lists(q, min_size=1, max_size=6))
def test_interpolate_recovers(p):
    xs = [Fraction(i) for i in range(len(p))]
    assert poly.interpolate(xs, [poly.evaluate(p, x) for x in xs]) == poly.trim(p)


@given(st.lists(q, min_size=1, max_size=6), q)
def test_divide_linear(p, a):
    prod = poly.mul(p, [-a, Fraction(1)])
    assert poly.divide_linear(prod, a) == poly.trim(p)


def test_divide_linear_inexact():
    with pytest.raises(ArithmeticError):
        poly.divide_linear([1, 0, 1], Fraction(1))


@given(st.lists(q, min_size=1, max_size=6), q)
def test_shifted_basis(c, x):
    mono = poly.shifted_basis_to_monomial(c)
    assert poly.evaluate(mono, x) == sum((ch * (1 + x) ** h for h, ch in enumerate(c)), Fraction(0))
