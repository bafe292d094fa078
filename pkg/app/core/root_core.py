"""Root-system description of the rank-one parabolic algebras.

Roots are stored as coordinate tuples with respect to the dual of the stored
Cartan basis. For F4 this is the only description available; for the matrix
families the same data is read off the u/v root pairs so that both code paths
can be compared.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from app.core.exact_scalar import TWO_PI
from app.core.exterior import MultiForm, wedge
from app.core.lie_core import Family, FamilySpec, LieAlgebraData
from app.core.utils.error import FamilyConstructionError, PreconditionError
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("root_core")

Root = tuple[Fraction, ...]

F4_CARTAN_SCALE = Fraction(18)


@dataclass(frozen=True)
class RootSystemData:
    family: FamilySpec
    rank: int
    positive_roots: tuple[Root, ...]
    levi_roots: tuple[Root, ...]
    psi: tuple[Root, ...]
    # [E_α, E_-α] in Cartan coordinates
    coroots: dict[Root, Root] = field(default_factory=dict)
    # B(E_α, E_-α)
    normalizations: dict[Root, Fraction] = field(default_factory=dict)
    cartan_pairing: tuple[Root, ...] = ()
    # simple roots generating the Levi factor, when known
    simple_roots: tuple[Root, ...] = ()
    distinct_roots: bool = True

    def __post_init__(self) -> None:
        if any(len(root) != self.rank for root in self.positive_roots):
            raise FamilyConstructionError("root of the wrong rank")
        if self.distinct_roots and len(set(self.positive_roots)) != len(self.positive_roots):
            raise FamilyConstructionError("positive roots are not pairwise distinct")
        levi, psi = set(self.levi_roots), set(self.psi)
        if levi & psi or len(self.levi_roots) + len(self.psi) != len(self.positive_roots):
            raise FamilyConstructionError("Levi roots and psi must partition the positive roots")


def _root(*values: Fraction | int) -> Root:
    return tuple(Fraction(v) for v in values)


def _f4_positive_roots() -> list[Root]:
    half = Fraction(1, 2)
    roots = [_root(*(int(i == k) for k in range(4))) for i in range(4)]
    for i, j in itertools.combinations(range(3), 2):
        roots.append(_root(*(int(k == i) - int(k == j) for k in range(4))))
    for i in range(3):
        roots.append(_root(*(-int(k == i) + int(k == 3) for k in range(4))))
    for i, j in itertools.combinations(range(3), 2):
        roots.append(_root(*(int(k == i) + int(k == j) for k in range(4))))
    for i in range(3):
        roots.append(_root(*(int(k == i) + int(k == 3) for k in range(4))))
    for signs in itertools.product((1, -1), repeat=3):
        roots.append(_root(*(half * s for s in signs), half))
    return roots


def f4_root_data() -> RootSystemData:
    """F4 with the parabolic whose Levi factor is generated by the first three simple roots."""

    positive = _f4_positive_roots()
    simple = (
        _root(1, -1, 0, 0),
        _root(0, 1, -1, 0),
        _root(0, 0, 1, 0),
        _root(Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2)),
    )
    # Levi roots are exactly those without a λ3 component
    levi = tuple(root for root in positive if root[3] == 0)
    psi = tuple(root for root in positive if root[3] != 0)
    coroots = {root: tuple(F4_CARTAN_SCALE * a for a in root) for root in positive}
    pairing = tuple(_root(*(18 * int(i == j) for j in range(4))) for i in range(4))
    return RootSystemData(
        family=FamilySpec(Family.F4),
        rank=4,
        positive_roots=tuple(positive),
        levi_roots=levi,
        psi=psi,
        coroots=coroots,
        normalizations={root: Fraction(1) for root in positive},
        cartan_pairing=pairing,
        simple_roots=simple,
    )


def positive_roots(data: RootSystemData) -> tuple[Root, ...]:
    return data.positive_roots


def phi_subset(data: RootSystemData) -> tuple[Root, ...]:
    return data.levi_roots


def psi_subset(data: RootSystemData) -> tuple[Root, ...]:
    return data.psi


def root_sum(roots: tuple[Root, ...], rank: int) -> Root:
    return tuple(sum((root[k] for root in roots), Fraction(0)) for k in range(rank))


def weight_of(algebra: LieAlgebraData, index: int) -> Root:
    """Eigenvalues of ad(h_i) on a basis vector, for each Cartan basis element h_i."""

    values = []
    for h in algebra.subspace("h").indices:
        image = algebra.bracket(h, index)
        if set(image) - {index}:
            raise FamilyConstructionError(f"{algebra.labels[index]} is not a weight vector")
        values.append(image.get(index, Fraction(0)))
    return tuple(values)


def root_data_from_algebra(algebra: LieAlgebraData) -> RootSystemData:
    """Read root data off the root pairs and the Levi root vectors of a matrix family."""

    if not algebra.complete:
        raise PreconditionError("root data of a root-data family is stored, not derived")
    cartan = algebra.subspace("h").indices
    rank = len(cartan)
    psi = tuple(weight_of(algebra, u) for u, _ in algebra.root_pairs)
    coroots: dict[Root, Root] = {}
    for (u, v), root in zip(algebra.root_pairs, psi):
        image = algebra.bracket(u, v)
        if not set(image) <= set(cartan):
            raise FamilyConstructionError(f"[{algebra.labels[u]}, {algebra.labels[v]}] leaves h")
        coroots[root] = tuple(image.get(h, Fraction(0)) for h in cartan)
    levi: list[Root] = []
    for index in algebra.subspace("r").indices:
        if index in cartan:
            continue
        root = weight_of(algebra, index)
        if any(root) and next(x for x in root if x) > 0:
            levi.append(root)
    distinct = len(set(psi)) == len(psi)
    return RootSystemData(
        family=algebra.family,
        rank=rank,
        positive_roots=tuple(levi) + psi,
        levi_roots=tuple(levi),
        psi=psi,
        coroots=coroots,
        distinct_roots=distinct,
    )


def delta_h1_root(roots: RootSystemData, algebra: LieAlgebraData) -> MultiForm:
    """Δ(h_1) = -(1/2π) Σ_{α∈ψ} α as a Cartan covector of the algebra."""

    cartan = algebra.subspace("h").indices
    if len(cartan) != roots.rank:
        raise FamilyConstructionError("Cartan dimension does not match the root rank")
    total = root_sum(roots.psi, roots.rank)
    covector = {cartan[k]: -total[k] for k in range(roots.rank) if total[k]}
    logger.debug("Root-side Δ(h1)", extra={"family": str(roots.family), "psi": len(roots.psi)})
    return MultiForm.covector(algebra.dim, covector).scale(TWO_PI.inverse())


def delta_c1_root(roots: RootSystemData, algebra: LieAlgebraData) -> MultiForm:
    """Δ(c_1) = (1/2π) Σ_{α∈ψ} (Σψ)(H_α) E_α^∨ ∧ E_-α^∨ with H_α = [E_α, E_-α]."""

    cartan = algebra.subspace("h").indices
    if len(algebra.root_pairs) != len(roots.psi):
        raise FamilyConstructionError("root pairs of the algebra do not match ψ")
    total = root_sum(roots.psi, roots.rank)
    form = MultiForm.zero(algebra.dim, 2)
    for u, v in algebra.root_pairs:
        image = algebra.bracket(u, v)
        if not set(image) <= set(cartan):
            raise FamilyConstructionError(f"[{algebra.labels[u]}, {algebra.labels[v]}] leaves h")
        value = sum((total[k] * image.get(h, Fraction(0)) for k, h in enumerate(cartan)), Fraction(0))
        if value:
            pair = wedge(MultiForm.basis(algebra.dim, u), MultiForm.basis(algebra.dim, v))
            form = form + pair.scale(value)
    return form.scale(TWO_PI.inverse())
