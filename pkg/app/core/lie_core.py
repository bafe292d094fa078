"""Finite-dimensional Lie algebras over ℚ given by a basis and structure constants."""

import itertools
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from app.core.utils.error import (
    KillingMismatchError,
    ParameterOutOfRangeError,
    UnknownSubspaceError,
)
from app.core.utils.linalg import rank
from app.core.utils.matrices import (
    CoordinateSolver,
    SparseMatrix,
    Vector,
    commutator,
    trace_product,
)
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("lie_core")


class Family(StrEnum):
    SL_PROJ = "SL_PROJ"
    SO_CONF = "SO_CONF"
    SU_CR = "SU_CR"
    SP = "SP"
    F4 = "F4"


class Backend(StrEnum):
    MATRIX = "MATRIX"
    ROOT_DATA = "ROOT_DATA"


_MINIMUM = {
    Family.SL_PROJ: 1,
    Family.SO_CONF: 1,
    Family.SU_CR: 0,
    Family.SP: 0,
}


@dataclass(frozen=True, slots=True)
class FamilySpec:
    family: Family
    n: int | None = None

    def __post_init__(self) -> None:
        if self.family is Family.F4:
            if self.n is not None:
                raise ParameterOutOfRangeError("F4 takes no parameter")
            return
        if self.n is None or self.n < _MINIMUM[self.family]:
            raise ParameterOutOfRangeError(
                f"{self.family} needs {self.parameter_name} >= {_MINIMUM[self.family]}, got {self.n}"
            )

    @property
    def parameter_name(self) -> str:
        return "q" if self.family is Family.SL_PROJ else "n"

    @property
    def q(self) -> int:
        """Codimension of the foliation, equal to dim_R(G/P) - 1."""

        match self.family:
            case Family.SL_PROJ | Family.SO_CONF:
                assert self.n is not None
                return self.n
            case Family.SU_CR:
                assert self.n is not None
                return 2 * self.n + 1
            case Family.SP:
                assert self.n is not None
                return 4 * self.n + 3
            case Family.F4:
                return 15

    def __str__(self) -> str:
        if self.n is None:
            return str(self.family)
        return f"{self.family}({self.parameter_name}={self.n})"


@dataclass(frozen=True, slots=True)
class Subspace:
    """Span of sparse coordinate vectors."""

    name: str
    vectors: tuple[Vector, ...]

    @classmethod
    def coordinate(cls, name: str, indices: list[int]) -> "Subspace":
        return cls(name, tuple({i: Fraction(1)} for i in indices))

    @property
    def is_coordinate(self) -> bool:
        return all(len(v) == 1 and next(iter(v.values())) == 1 for v in self.vectors)

    @property
    def indices(self) -> tuple[int, ...]:
        """Basis indices of a coordinate subspace, in stored order."""

        return tuple(next(iter(v)) for v in self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)


class ValidationFailure(NamedTuple):
    axiom: str
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    family: FamilySpec
    labels: tuple[str, ...]
    # [e_i, e_j] for i < j, nonzero coefficients only
    structure: dict[tuple[int, int], Vector]
    subspaces: dict[str, Subspace]
    backend: Backend
    matrices: tuple[SparseMatrix, ...] | None = None
    # B(X, Y) = killing_scale · tr(XY) on the matrix model
    killing_scale: Fraction | None = None
    # stored Killing pairings for root data, keyed by sorted index pairs
    stored_killing: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    # covectors whose Chevalley-Eilenberg differential is fully determined
    closed_covectors: frozenset[int] | None = None
    # (u index, v index) for each root pair, in canonical order
    root_pairs: tuple[tuple[int, int], ...] = ()
    solver: CoordinateSolver | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def complete(self) -> bool:
        return self.backend is Backend.MATRIX

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownSubspaceError(f"no basis element labelled {label!r}") from None

    def coordinates_of(self, matrix: SparseMatrix) -> Vector:
        if self.solver is None:
            raise UnknownSubspaceError(f"{self.family} has no matrix model")
        return self.solver.coordinates(matrix)

    def subspace(self, name: str) -> Subspace:
        try:
            return self.subspaces[name]
        except KeyError:
            raise UnknownSubspaceError(f"{name!r} is not defined for {self.family}") from None

    def bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            return self.structure.get((i, j), {})
        return {k: -c for k, c in self.structure.get((j, i), {}).items()}

    def bracket_vectors(self, x: Vector, y: Vector) -> Vector:
        result: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket(i, j).items():
                    value = result.get(k, Fraction(0)) + a * b * c
                    if value:
                        result[k] = value
                    else:
                        result.pop(k, None)
        return result

    @cached_property
    def ad(self) -> tuple[dict[int, Vector], ...]:
        """ad(e_i) as sparse columns: ad[i][j] = [e_i, e_j]."""

        return tuple(
            {j: self.bracket(i, j) for j in range(self.dim) if self.bracket(i, j)}
            for i in range(self.dim)
        )

    def with_structure_constant(self, i: int, j: int, k: int, value: Fraction) -> "LieAlgebraData":
        """Copy with c_ij^k replaced; used to build deliberately broken algebras."""

        if i > j:
            i, j, value = j, i, -value
        structure = {key: dict(v) for key, v in self.structure.items()}
        entry = structure.setdefault((i, j), {})
        if value:
            entry[k] = Fraction(value)
        else:
            entry.pop(k, None)
        return replace(self, structure=structure)


def _trace_killing(data: LieAlgebraData) -> list[list[Fraction]]:
    n = data.dim
    form = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = Fraction(0)
            # tr(ad e_i ad e_j) = Σ_k Σ_l c_{jk}^l c_{il}^k
            for k, column in data.ad[j].items():
                for l, c in column.items():
                    d = data.ad[i].get(l, {}).get(k)
                    if d:
                        total += c * d
            form[i][j] = form[j][i] = total
    return form


def killing_form(data: LieAlgebraData) -> list[list[Fraction]]:
    """Symmetric Killing matrix in the stored basis.

    For matrix families the ad-trace form is computed and checked against
    `killing_scale · tr(XY)`. For root data the stored pairings are returned.
    """

    if data.backend is Backend.ROOT_DATA:
        n = data.dim
        form = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), value in data.stored_killing.items():
            form[i][j] = form[j][i] = value
        return form
    form = _trace_killing(data)
    if data.matrices is not None and data.killing_scale is not None:
        for i, j in itertools.combinations_with_replacement(range(data.dim), 2):
            expected = data.killing_scale * trace_product(data.matrices[i], data.matrices[j])
            if form[i][j] != expected:
                raise KillingMismatchError(
                    f"{data.family}: B({data.labels[i]}, {data.labels[j]}) = {form[i][j]}, "
                    f"trace formula gives {expected}"
                )
    return form


def _in_span(vector: Vector, space: Subspace, dim: int) -> bool:
    if not vector:
        return True
    if space.is_coordinate:
        return set(vector) <= set(space.indices)
    rows = [[v.get(k, Fraction(0)) for k in range(dim)] for v in space.vectors]
    extended = rows + [[vector.get(k, Fraction(0)) for k in range(dim)]]
    return rank(extended, dim) == rank(rows, dim)


def validate_lie(data: LieAlgebraData) -> list[ValidationFailure]:
    """Check the Lie axioms that the stored data can express; empty list means valid."""

    failures: list[ValidationFailure] = []
    for (i, j), value in data.structure.items():
        if i >= j and value:
            failures.append(
                ValidationFailure("antisymmetry", (i, j), "brackets must be stored with i < j")
            )

    if data.complete:
        for i, j, k in itertools.combinations(range(data.dim), 3):
            total: Vector = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for key, value in data.bracket_vectors(data.bracket(a, b), {c: Fraction(1)}).items():
                    total[key] = total.get(key, Fraction(0)) + value
            residue = {key: value for key, value in total.items() if value}
            if residue:
                failures.append(
                    ValidationFailure(
                        "jacobi",
                        (i, j, k),
                        f"[[{data.labels[i]},{data.labels[j]}],{data.labels[k]}] + cyclic = {residue}",
                    )
                )
    else:
        cartan = data.closed_covectors or frozenset()
        for u, v in data.root_pairs:
            if not set(data.bracket(u, v)) <= cartan:
                failures.append(
                    ValidationFailure(
                        "root_pair", (u, v), "[E_a, E_-a] must lie in the Cartan subalgebra"
                    )
                )
        failures.extend(_root_data_failures(data))

    for name in ("h", "r", "p", "k_G", "k_P"):
        space = data.subspaces.get(name)
        if space is None:
            continue
        for a, b in itertools.combinations(range(space.dim), 2):
            image = data.bracket_vectors(space.vectors[a], space.vectors[b])
            if data.complete or set(image) <= (data.closed_covectors or frozenset()):
                if not _in_span(image, space, data.dim):
                    failures.append(
                        ValidationFailure("closure", (a, b), f"{name} is not closed under bracket")
                    )

    if data.complete:
        failures.extend(_invariance_failures(data))
    logger.debug(
        "Validated Lie algebra", extra={"family": str(data.family), "failures": len(failures)}
    )
    return failures


def _root_data_failures(data: LieAlgebraData) -> list[ValidationFailure]:
    """Check the stored root-data normalization.

    With c = B(H_0, H_0), the Cartan block must be c·δ_ij, every coroot
    [E_a, E_-a] must be c·a in Cartan coordinates and B(E_a, E_-a) = 1.
    This pairing is not ad-invariant.
    """

    cartan = sorted(data.closed_covectors or ())
    if not cartan:
        return []
    scale = data.stored_killing.get((cartan[0], cartan[0]), Fraction(0))
    failures: list[ValidationFailure] = []
    for i, j in itertools.combinations_with_replacement(cartan, 2):
        expected = scale if i == j else Fraction(0)
        if data.stored_killing.get((i, j), Fraction(0)) != expected or not scale:
            failures.append(
                ValidationFailure("cartan_pairing", (i, j), f"B(H_i, H_j) must be {scale}·δ_ij")
            )
    for u, v in data.root_pairs:
        weight = {i: data.bracket(i, u).get(u, Fraction(0)) for i in cartan}
        coroot = {i: scale * a for i, a in weight.items() if a}
        if data.bracket(u, v) != coroot:
            failures.append(
                ValidationFailure(
                    "coroot", (u, v), f"[{data.labels[u]}, {data.labels[v]}] must be {scale} times its root"
                )
            )
        if data.stored_killing.get((min(u, v), max(u, v))) != 1:
            failures.append(
                ValidationFailure("root_normalization", (u, v), "B(E_a, E_-a) must be 1")
            )
    return failures


def _invariance_failures(data: LieAlgebraData) -> list[ValidationFailure]:
    try:
        form = killing_form(data)
    except KillingMismatchError as e:
        return [ValidationFailure("killing_trace", (), str(e))]
    failures: list[ValidationFailure] = []

    def pairing(vector: Vector, k: int) -> Fraction:
        return sum((c * form[l][k] for l, c in vector.items()), Fraction(0))

    for x in range(data.dim):
        for y in range(data.dim):
            xy = data.bracket(x, y)
            for z in range(y, data.dim):
                if pairing(xy, z) + pairing(data.bracket(x, z), y):
                    failures.append(
                        ValidationFailure("killing_invariance", (x, y, z), "B([x,y],z) != -B(y,[x,z])")
                    )
    return failures


def entry_covector(data: LieAlgebraData, i: int, j: int) -> Vector:
    """The matrix-entry functional X ↦ X_ij, expressed in the dual basis."""

    if data.matrices is None:
        raise UnknownSubspaceError(f"{data.family} has no matrix model")
    return {
        k: matrix[(i, j)] for k, matrix in enumerate(data.matrices) if (i, j) in matrix
    }


def structure_from_matrices(
    matrices: list[SparseMatrix], coordinates: Callable[[SparseMatrix], Vector]
) -> dict[tuple[int, int], Vector]:
    """Structure constants of a matrix Lie algebra; `coordinates` maps a matrix to its vector."""

    structure: dict[tuple[int, int], Vector] = {}
    for i, j in itertools.combinations(range(len(matrices)), 2):
        image = commutator(matrices[i], matrices[j])
        if image:
            structure[(i, j)] = coordinates(image)
    return structure
