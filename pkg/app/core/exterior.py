"""Exterior algebra of g* with the Chevalley-Eilenberg differential.

Forms are sparse maps from strictly increasing index tuples to rational
coefficients, times one exact scalar prefactor. The prefactor is kept in a
canonical residue form (a product of square roots of primes and a power of π)
so that equal forms compare equal regardless of how they were produced.
"""

import itertools
import math
from bisect import bisect_right
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from weakref import WeakKeyDictionary

from app.core.exact_scalar import ONE, ExactScalar
from app.core.lie_core import LieAlgebraData
from app.core.utils.error import (
    AmbientMismatchError,
    BudgetExceededError,
    DegreeError,
    FormError,
    IncommensurablePrefactorError,
    IncompleteStructureError,
    NotProportionalError,
)
from app.core.utils.linalg import nullspace, rank
from app.core.utils.matrices import Vector
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("exterior")

Monomial = tuple[int, ...]
Scalar = int | Fraction | ExactScalar

BASIC_SPACE_BUDGET = 20_000


class MultiForm:
    __slots__ = ("dim", "degree", "terms", "prefactor")

    def __init__(
        self,
        dim: int,
        degree: int,
        terms: Mapping[Monomial, Fraction] | None = None,
        prefactor: ExactScalar = ONE,
        *,
        trusted: bool = False,
    ) -> None:
        self.dim = dim
        self.degree = degree
        cleaned = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        if not trusted:
            for monomial in cleaned:
                _check_monomial(monomial, dim, degree)
        rational, residue = prefactor.split_rational()
        if not cleaned or rational == 0:
            cleaned, residue = {}, ONE
        elif rational != 1:
            cleaned = {m: c * rational for m, c in cleaned.items()}
        self.terms: dict[Monomial, Fraction] = cleaned
        self.prefactor = residue

    # construction

    @classmethod
    def zero(cls, dim: int, degree: int) -> "MultiForm":
        return cls(dim, degree)

    @classmethod
    def one(cls, dim: int) -> "MultiForm":
        return cls(dim, 0, {(): Fraction(1)})

    @classmethod
    def basis(cls, dim: int, index: int) -> "MultiForm":
        return cls(dim, 1, {(index,): Fraction(1)})

    @classmethod
    def covector(cls, dim: int, coefficients: Mapping[int, Fraction]) -> "MultiForm":
        return cls(dim, 1, {(i,): c for i, c in coefficients.items()})

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[int]:
        return {i for monomial in self.terms for i in monomial}

    def coefficient(self, monomial: Iterable[int]) -> ExactScalar:
        ordered, sign = sort_with_sign(tuple(monomial))
        if sign == 0:
            return ExactScalar.zero()
        value = self.terms.get(ordered, Fraction(0)) * sign
        return self.prefactor * value if value else ExactScalar.zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiForm):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.degree == other.degree
            and self.prefactor == other.prefactor
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultiForm(dim={self.dim}, degree={self.degree}, terms={len(self.terms)}, prefactor={self.prefactor})"

    # linear structure

    def _same_space(self, other: "MultiForm") -> None:
        if self.dim != other.dim:
            raise AmbientMismatchError(f"{self.dim} != {other.dim}")
        if self.degree != other.degree:
            raise DegreeError(f"cannot add degree {self.degree} to degree {other.degree}")

    def __add__(self, other: "MultiForm") -> "MultiForm":
        self._same_space(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.prefactor != other.prefactor:
            raise IncommensurablePrefactorError(f"{self.prefactor} vs {other.prefactor}")
        terms = dict(self.terms)
        for monomial, c in other.terms.items():
            terms[monomial] = terms.get(monomial, Fraction(0)) + c
        return MultiForm(self.dim, self.degree, terms, self.prefactor, trusted=True)

    def __neg__(self) -> "MultiForm":
        return self.scale(-1)

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        return self + (-other)

    def scale(self, factor: Scalar) -> "MultiForm":
        if isinstance(factor, ExactScalar):
            return MultiForm(self.dim, self.degree, self.terms, self.prefactor * factor, trusted=True)
        terms = {m: c * factor for m, c in self.terms.items()}
        return MultiForm(self.dim, self.degree, terms, self.prefactor, trusted=True)

    def __mul__(self, factor: Scalar) -> "MultiForm":
        return self.scale(factor)

    __rmul__ = __mul__

    def __xor__(self, other: "MultiForm") -> "MultiForm":
        return wedge(self, other)

    def power(self, k: int) -> "MultiForm":
        """k-th wedge power of an even form, expanded over k-subsets of its terms."""

        if k < 0:
            raise DegreeError("negative wedge power")
        if k == 0:
            return MultiForm.one(self.dim)
        if self.degree % 2:
            return self if k == 1 else MultiForm.zero(self.dim, self.degree * k)
        if self.degree == 0:
            terms = {(): c**k for c in self.terms.values()}
            return MultiForm(self.dim, 0, terms, self.prefactor**k, trusted=True)
        # elementary symmetric expansion; decomposable terms square to zero
        layers: list[dict[Monomial, Fraction]] = [{(): Fraction(1)}] + [{} for _ in range(k)]
        for monomial, c in self.terms.items():
            for j in range(k, 0, -1):
                target = layers[j]
                for partial, a in layers[j - 1].items():
                    merged, sign = merge_with_sign(partial, monomial)
                    if sign:
                        value = target.get(merged, Fraction(0)) + sign * a * c
                        if value:
                            target[merged] = value
                        else:
                            target.pop(merged, None)
        factor = math.factorial(k)
        terms = {m: c * factor for m, c in layers[k].items()}
        return MultiForm(self.dim, self.degree * k, terms, self.prefactor**k, trusted=True)

    def ratio_to(self, reference: "MultiForm") -> ExactScalar:
        """The scalar c with self = c · reference."""

        self._same_space(reference)
        if reference.is_zero:
            raise NotProportionalError("reference form is zero")
        if self.is_zero:
            return ExactScalar.zero()
        pivot = next(iter(reference.terms))
        ratio = self.terms.get(pivot, Fraction(0)) / reference.terms[pivot]
        if set(self.terms) != set(reference.terms) or any(
            self.terms[m] != ratio * c for m, c in reference.terms.items()
        ):
            raise NotProportionalError("term-wise ratios differ")
        return ExactScalar.of(ratio) * self.prefactor / reference.prefactor

    def render(self, labels: Sequence[str]) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for monomial in sorted(self.terms):
            name = "∧".join(f"{labels[i]}^∨" for i in monomial) or "1"
            parts.append(f"{self.terms[monomial]}·{name}")
        body = " + ".join(parts)
        return body if self.prefactor == ONE else f"{self.prefactor}·({body})"


def _check_monomial(monomial: Monomial, dim: int, degree: int) -> None:
    if len(monomial) != degree:
        raise DegreeError(f"monomial {monomial} in a degree {degree} form")
    if any(b <= a for a, b in itertools.pairwise(monomial)):
        raise FormError(f"monomial {monomial} is not strictly increasing")
    if monomial and (monomial[0] < 0 or monomial[-1] >= dim):
        raise AmbientMismatchError(f"monomial {monomial} outside dimension {dim}")


def sort_with_sign(sequence: Sequence[int]) -> tuple[Monomial, int]:
    """Sorted tuple and the sign of the sorting permutation (0 on repeats)."""

    if len(set(sequence)) != len(sequence):
        return (), 0
    inversions = sum(
        1 for a, b in itertools.combinations(range(len(sequence)), 2) if sequence[a] > sequence[b]
    )
    return tuple(sorted(sequence)), -1 if inversions % 2 else 1


def merge_with_sign(left: Monomial, right: Monomial) -> tuple[Monomial, int]:
    """e^left ∧ e^right as (sorted monomial, sign); sign 0 when they overlap."""

    inversions = 0
    for y in right:
        position = bisect_right(left, y)
        if position and left[position - 1] == y:
            return (), 0
        inversions += len(left) - position
    merged = tuple(sorted(left + right))
    return merged, -1 if inversions % 2 else 1


def wedge(f: MultiForm, g: MultiForm) -> MultiForm:
    if f.dim != g.dim:
        raise AmbientMismatchError(f"{f.dim} != {g.dim}")
    degree = f.degree + g.degree
    if degree > f.dim:
        return MultiForm.zero(f.dim, degree)
    terms: dict[Monomial, Fraction] = {}
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            merged, sign = merge_with_sign(a, b)
            if sign:
                terms[merged] = terms.get(merged, Fraction(0)) + sign * x * y
    return MultiForm(f.dim, degree, terms, f.prefactor * g.prefactor, trusted=True)


def wedge_all(forms: Sequence[MultiForm], dim: int) -> MultiForm:
    result = MultiForm.one(dim)
    for form in forms:
        result = wedge(result, form)
    return result


_DIFFERENTIALS: WeakKeyDictionary[LieAlgebraData, dict[int, list[tuple[Monomial, Fraction]]]] = (
    WeakKeyDictionary()
)


def _covector_differentials(data: LieAlgebraData) -> dict[int, list[tuple[Monomial, Fraction]]]:
    cached = _DIFFERENTIALS.get(data)
    if cached is not None:
        return cached
    # dα(e_i, e_j) = -α([e_i, e_j])
    table: dict[int, list[tuple[Monomial, Fraction]]] = {k: [] for k in range(data.dim)}
    for (i, j), image in data.structure.items():
        for k, c in image.items():
            table[k].append(((i, j), -c))
    _DIFFERENTIALS[data] = table
    return table


def ce_d(form: MultiForm, data: LieAlgebraData) -> MultiForm:
    """Chevalley-Eilenberg differential, extended as an antiderivation."""

    if form.dim != data.dim:
        raise AmbientMismatchError(f"form on {form.dim} dimensions, algebra of dimension {data.dim}")
    if not data.complete:
        closed = data.closed_covectors or frozenset()
        missing = {k for monomial in form.terms for k in monomial} - closed
        if missing:
            raise IncompleteStructureError(
                f"d of {[data.labels[k] for k in sorted(missing)][:3]} needs brackets that are not stored"
            )
    table = _covector_differentials(data)
    terms: dict[Monomial, Fraction] = {}
    for monomial, c in form.terms.items():
        for r, k in enumerate(monomial):
            head, tail = monomial[:r], monomial[r + 1 :]
            for (i, j), a in table[k]:
                ordered, sign = sort_with_sign(head + (i, j) + tail)
                if sign:
                    value = -a * c * sign if r % 2 else a * c * sign
                    terms[ordered] = terms.get(ordered, Fraction(0)) + value
    return MultiForm(form.dim, form.degree + 1, terms, form.prefactor, trusted=True)


def hat_d(form: MultiForm, data: LieAlgebraData) -> MultiForm:
    """Component of d on 1-forms that pairs u with v."""

    if form.degree != 1:
        raise DegreeError("the projected differential is defined on 1-forms")
    u = set(data.subspace("u").indices)
    v = set(data.subspace("v").indices)
    full = ce_d(form, data)
    terms = {
        (i, j): c
        for (i, j), c in full.terms.items()
        if (i in u and j in v) or (i in v and j in u)
    }
    return MultiForm(form.dim, 2, terms, full.prefactor, trusted=True)


def contract(form: MultiForm, vector: Vector | int) -> MultiForm:
    """Interior product ι_X."""

    if isinstance(vector, int):
        vector = {vector: Fraction(1)}
    if form.degree == 0:
        return MultiForm.zero(form.dim, 0)
    terms: dict[Monomial, Fraction] = {}
    for monomial, c in form.terms.items():
        for position, k in enumerate(monomial):
            x = vector.get(k)
            if x:
                rest = monomial[:position] + monomial[position + 1 :]
                value = c * x if position % 2 == 0 else -c * x
                terms[rest] = terms.get(rest, Fraction(0)) + value
    return MultiForm(form.dim, form.degree - 1, terms, form.prefactor, trusted=True)


def lie_derivative(form: MultiForm, vector: Vector | int, data: LieAlgebraData) -> MultiForm:
    """L_X = ι_X d + d ι_X."""

    first = contract(ce_d(form, data), vector)
    if form.degree == 0:
        return first
    return first + ce_d(contract(form, vector), data)


def basic_check(form: MultiForm, data: LieAlgebraData, subspace_name: str) -> bool:
    """True when ι_X f = 0 and L_X f = 0 for every spanning vector X of the subspace."""

    space = data.subspace(subspace_name)
    for vector in space.vectors:
        if not contract(form, vector).is_zero:
            return False
        if not lie_derivative(form, vector, data).is_zero:
            return False
    return True


def pullback(form: MultiForm, images: Sequence[MultiForm]) -> MultiForm:
    """Pull back along a linear map given by the images of the dual basis covectors."""

    if len(images) != form.dim:
        raise AmbientMismatchError(f"{len(images)} covector images for dimension {form.dim}")
    result = MultiForm.zero(form.dim, form.degree)
    for monomial, c in form.terms.items():
        image = wedge_all([images[k] for k in monomial], form.dim).scale(c)
        result = result + image
    return result.scale(form.prefactor)


def basic_subspace_dimension(data: LieAlgebraData, degree: int, subspace_name: str) -> int:
    """Dimension of the forms of the given degree that are basic for the subspace.

    Forms annihilated by every ι_X are exactly Λ^degree of the annihilator, so
    the unknowns are coefficients on wedges of an annihilator basis and only
    L_X f = 0 remains to be imposed.
    """

    space = data.subspace(subspace_name)
    rows = [[vector.get(k, Fraction(0)) for k in range(data.dim)] for vector in space.vectors]
    annihilator = [
        MultiForm.covector(data.dim, {k: c for k, c in enumerate(alpha) if c})
        for alpha in nullspace(rows, data.dim)
    ]
    unknowns = list(itertools.combinations(range(len(annihilator)), degree))
    if len(unknowns) > BASIC_SPACE_BUDGET:
        raise BudgetExceededError(
            f"{len(unknowns)} unknown coefficients exceed {BASIC_SPACE_BUDGET}"
        )
    equations: dict[tuple[int, Monomial], dict[int, Fraction]] = {}
    for column, subset in enumerate(unknowns):
        form = wedge_all([annihilator[i] for i in subset], data.dim)
        for x, vector in enumerate(space.vectors):
            for target, c in lie_derivative(form, vector, data).terms.items():
                equations.setdefault((x, target), {})[column] = c
    matrix = [
        [row.get(column, Fraction(0)) for column in range(len(unknowns))]
        for row in equations.values()
    ]
    dimension = len(unknowns) - rank(matrix, len(unknowns))
    logger.info(
        "Computed basic subspace",
        extra={"family": str(data.family), "degree": degree, "dimension": dimension},
    )
    return dimension
