"""Exact rational linear algebra on top of sympy's DomainMatrix over QQ."""

from collections.abc import Sequence
from fractions import Fraction

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Row = Sequence[Fraction]


def _to_domain(rows: Sequence[Row], ncols: int | None = None) -> DomainMatrix:
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    data = [[QQ(int(x.numerator), int(x.denominator)) for x in row] for row in rows]
    return DomainMatrix(data, (len(rows), width), QQ)


def _to_fraction(value: Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _from_domain(matrix: DomainMatrix) -> list[list[Fraction]]:
    dense = matrix.to_Matrix()
    return [
        [_to_fraction(dense[i, j]) for j in range(dense.cols)]
        for i in range(dense.rows)
    ]


def rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return int(_to_domain(rows, ncols).rank())


def pivot_columns(rows: Sequence[Row], ncols: int) -> tuple[int, ...]:
    """Indices of a maximal set of linearly independent columns."""

    if not rows:
        return ()
    _, pivots = _to_domain(rows, ncols).rref()
    return tuple(int(p) for p in pivots)


def inverse(rows: Sequence[Row]) -> list[list[Fraction]]:
    return _from_domain(_to_domain(rows).inv())


def determinant(rows: Sequence[Row]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _to_fraction(QQ.to_sympy(_to_domain(rows).det()))


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""

    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = _to_domain(rows, ncols).rref()
    dense = _from_domain(reduced)
    free = [j for j in range(ncols) if j not in pivots]
    basis: list[list[Fraction]] = []
    for f in free:
        vector = [Fraction(0)] * ncols
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -dense[r][f]
        basis.append(vector)
    return basis
