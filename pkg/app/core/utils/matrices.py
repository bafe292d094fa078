from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from app.core.utils.error import NotInSpanError
from app.core.utils.linalg import inverse, pivot_columns

# 1-based (row, column) -> entry; zero entries are never stored
SparseMatrix = dict[tuple[int, int], Fraction]
Vector = dict[int, Fraction]


def unit(i: int, j: int) -> SparseMatrix:
    return {(i, j): Fraction(1)}


def combine(*parts: tuple[int | Fraction, Mapping[tuple[int, int], Fraction]]) -> SparseMatrix:
    """Linear combination Σ c·M of sparse matrices."""

    result: SparseMatrix = {}
    for coefficient, matrix in parts:
        for key, value in matrix.items():
            entry = result.get(key, Fraction(0)) + coefficient * value
            if entry:
                result[key] = entry
            else:
                result.pop(key, None)
    return result


def multiply(a: Mapping[tuple[int, int], Fraction], b: Mapping[tuple[int, int], Fraction]) -> SparseMatrix:
    rows_of_b: dict[int, list[tuple[int, Fraction]]] = {}
    for (r, c), value in b.items():
        rows_of_b.setdefault(r, []).append((c, value))
    result: SparseMatrix = {}
    for (i, k), left in a.items():
        for j, right in rows_of_b.get(k, ()):
            entry = result.get((i, j), Fraction(0)) + left * right
            if entry:
                result[(i, j)] = entry
            else:
                result.pop((i, j), None)
    return result


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return combine((1, multiply(a, b)), (-1, multiply(b, a)))


def transpose(a: Mapping[tuple[int, int], Fraction]) -> SparseMatrix:
    return {(c, r): value for (r, c), value in a.items()}


def trace(a: Mapping[tuple[int, int], Fraction]) -> Fraction:
    return sum((value for (r, c), value in a.items() if r == c), Fraction(0))


def trace_product(a: SparseMatrix, b: SparseMatrix) -> Fraction:
    return sum(
        (value * b.get((c, r), Fraction(0)) for (r, c), value in a.items()),
        Fraction(0),
    )


def from_vector(basis: Sequence[SparseMatrix], vector: Mapping[int, Fraction]) -> SparseMatrix:
    return combine(*((c, basis[i]) for i, c in vector.items()))


class CoordinateSolver:
    """Coordinates of matrices with respect to a fixed linearly independent basis.

    A set of entry positions on which the basis is independent is chosen once and the
    square system on those positions is inverted; each solve is then checked by
    reconstruction so that matrices outside the span are rejected.
    """

    def __init__(self, basis: Sequence[SparseMatrix]) -> None:
        self.basis = list(basis)
        positions = sorted({key for matrix in self.basis for key in matrix})
        columns = [
            [matrix.get(position, Fraction(0)) for matrix in self.basis]
            for position in positions
        ]
        # transpose: one row per basis element, one column per entry position
        rows = [[column[k] for column in columns] for k in range(len(self.basis))]
        pivots = pivot_columns(rows, len(positions))
        if len(pivots) != len(self.basis):
            raise NotInSpanError("basis matrices are linearly dependent")
        self.pivots = [positions[p] for p in pivots]
        square = [
            [self.basis[k].get(position, Fraction(0)) for k in range(len(self.basis))]
            for position in self.pivots
        ]
        inverted = inverse(square)
        self._columns: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for r, position in enumerate(self.pivots):
            self._columns[position] = [
                (k, inverted[k][r]) for k in range(len(self.basis)) if inverted[k][r]
            ]

    def coordinates(self, matrix: Mapping[tuple[int, int], Fraction]) -> Vector:
        vector: Vector = {}
        for position, value in matrix.items():
            for k, weight in self._columns.get(position, ()):
                entry = vector.get(k, Fraction(0)) + value * weight
                if entry:
                    vector[k] = entry
                else:
                    vector.pop(k, None)
        if from_vector(self.basis, vector) != dict(matrix):
            raise NotInSpanError(f"entries {sorted(matrix.items())[:4]}...")
        return vector


def diagonal(entries: Iterable[int | Fraction]) -> SparseMatrix:
    return {(i, i): Fraction(v) for i, v in enumerate(entries, start=1) if v}
