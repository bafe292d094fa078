from fractions import Fraction

from app.core.utils.linalg import determinant, inverse, nullspace, pivot_columns, rank


def rows(*values: tuple[int, ...]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in values]


def test_rank_and_pivots():
    matrix = rows((1, 2, 3), (2, 4, 6), (0, 1, 1))
    assert rank(matrix) == 2
    assert pivot_columns(matrix, 3) == (0, 1)
    assert rank([]) == 0


def test_inverse_and_determinant():
    matrix = rows((2, 1), (1, 1))
    assert inverse(matrix) == rows((1, -1), (-1, 2))
    assert determinant(matrix) == 1
    assert determinant(rows((2, 0), (0, 3))) == 6
    assert determinant([]) == 1


def test_nullspace():
    matrix = rows((1, 2, 3), (0, 1, 1))
    (kernel,) = nullspace(matrix, 3)
    assert kernel == [Fraction(-1), Fraction(-1), Fraction(1)]
    assert nullspace([], 2) == rows((1, 0), (0, 1))
