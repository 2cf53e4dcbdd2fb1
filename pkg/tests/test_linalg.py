"""Fraction-free elimination cross-checked against sympy's exact routines."""

import random
from fractions import Fraction

import pytest
import sympy

from tabloids import linalg


def random_matrix(rng, rows, cols, lo=-6, hi=6, denoms=(1, 2, 3)):
    return [
        [Fraction(rng.randint(lo, hi), rng.choice(denoms)) for _ in range(cols)]
        for _ in range(rows)
    ]


def low_rank_matrix(rng, rows, cols, r):
    a = random_matrix(rng, rows, r)
    b = random_matrix(rng, r, cols)
    return linalg.matrix_multiply(a, b)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in m])


def test_clear_denominators():
    row = [Fraction(1, 2), Fraction(2, 3), 1]
    assert linalg.clear_denominators(row) == [3, 4, 6]
    assert linalg.clear_denominators([]) == []


def test_rank_matches_sympy():
    rng = random.Random(101)
    for _ in range(25):
        rows = rng.randint(1, 7)
        cols = rng.randint(1, 7)
        m = random_matrix(rng, rows, cols)
        assert linalg.rank(m) == to_sympy(m).rank()
    for _ in range(15):
        rows, cols = rng.randint(2, 7), rng.randint(2, 7)
        r = rng.randint(1, min(rows, cols))
        m = low_rank_matrix(rng, rows, cols, r)
        assert linalg.rank(m) == to_sympy(m).rank()


def test_row_basis_spans_row_space():
    rng = random.Random(55)
    for _ in range(20):
        rows, cols = rng.randint(2, 6), rng.randint(2, 6)
        m = low_rank_matrix(rng, rows, cols, rng.randint(1, min(rows, cols)))
        basis = linalg.row_basis(m)
        assert len(basis) == linalg.rank(m)
        assert linalg.rank(basis) == len(basis)
        assert linalg.rank(list(m) + basis) == len(basis)


def test_solve_linear_consistent():
    rng = random.Random(77)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = random_matrix(rng, rows, cols)
        x_true = [Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(cols)]
        b = [sum((av * xv for av, xv in zip(row, x_true)), Fraction(0)) for row in a]
        x, nullity = linalg.solve_linear(a, b)
        assert x is not None
        assert nullity == cols - linalg.rank(a)
        for row, rhs in zip(a, b):
            assert sum((av * xv for av, xv in zip(row, x)), Fraction(0)) == rhs


def test_solve_linear_inconsistent():
    a = [[1, 1], [1, 1]]
    b = [1, 2]
    x, _ = linalg.solve_linear(a, b)
    assert x is None


def test_solve_free_variables_pinned_to_zero():
    # one equation, three unknowns: pivot on the first column only
    x, nullity = linalg.solve_linear([[2, 1, 1]], [4])
    assert x == [2, 0, 0]
    assert nullity == 2


def test_matrix_helpers():
    a = [[1, 2], [3, 4]]
    assert linalg.transpose(a) == [[1, 3], [2, 4]]
    assert linalg.matrix_multiply(a, a) == [[7, 10], [15, 22]]
    with pytest.raises(ValueError):
        linalg.solve_linear([[1, 2]], [1, 2])
