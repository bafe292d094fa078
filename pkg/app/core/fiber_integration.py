"""Integration of Δ(GV) along the fiber of G/K_P → G/K_G and the constant c_G."""

from dataclasses import dataclass
from fractions import Fraction

from app.core.chern_weil import CharacteristicResult, delta_gv
from app.core.exact_scalar import ONE, ExactScalar, sphere_volume
from app.core.exterior import MultiForm, pullback, wedge, wedge_all
from app.core.families import build_family
from app.core.lie_core import Family, FamilySpec, LieAlgebraData
from app.core.split_basis import SplitBasisData
from app.core.utils.error import (
    NotProportionalError,
    PreconditionError,
    SplitError,
)
from app.core.utils.linalg import determinant
from app.core.utils.matrices import diagonal, from_vector, multiply, trace_product, transpose
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("fiber_integration")


@dataclass(frozen=True)
class SplitDecomposition:
    family: FamilySpec
    split_coefficient: ExactScalar
    base_factor: MultiForm
    fiber_factor: MultiForm


@dataclass(frozen=True)
class FiberIntegral:
    family: FamilySpec
    split_coefficient: ExactScalar
    base_coefficient: ExactScalar
    fiber_norm: ExactScalar
    sphere_volume: ExactScalar

    @property
    def fiber_coefficient(self) -> ExactScalar:
        return self.split_coefficient * self.fiber_norm

    @property
    def c_G(self) -> ExactScalar:
        return self.fiber_coefficient * self.base_coefficient * self.sphere_volume


@dataclass(frozen=True)
class VanishingCertificate:
    q: int
    split_coefficient: ExactScalar
    antipodal: tuple[int, ...]
    base_factor: MultiForm
    pulled_back_base: MultiForm
    base_sign: int
    fiber_sign: int
    normalizes_k_P: bool
    gv_invariant: bool


def _covectors(data: LieAlgebraData, split: SplitBasisData) -> tuple[MultiForm, list[MultiForm], list[MultiForm]]:
    dist = MultiForm.covector(data.dim, split.distinguished)
    plus = [MultiForm.covector(data.dim, p) for p in split.plus]
    minus = [MultiForm.covector(data.dim, m) for m in split.minus]
    return dist, plus, minus


def split_form(data: LieAlgebraData, split: SplitBasisData, gv: MultiForm) -> SplitDecomposition:
    """Write gv = K · dist ∧ P_1 ∧ … ∧ P_q ∧ M_1 ∧ … ∧ M_q."""

    dist, plus, minus = _covectors(data, split)
    q = len(plus)
    # interleaving keeps each P_i ∧ M_i a single monomial
    interleaved = dist
    for p, m in zip(plus, minus):
        interleaved = wedge(interleaved, wedge(p, m))
    try:
        ratio = gv.ratio_to(interleaved)
    except NotProportionalError as e:
        raise SplitError(f"{data.family}: {e}") from e
    if ratio.is_zero:
        raise SplitError(f"{data.family}: the top form vanishes")
    coefficient = ratio * (-1) ** (q * (q - 1) // 2)
    base = wedge(dist, wedge_all(plus, data.dim))
    fiber = wedge_all(minus, data.dim)
    return SplitDecomposition(data.family, coefficient, base, fiber)


def split_coefficient(data: LieAlgebraData, split: SplitBasisData, gv: MultiForm) -> ExactScalar:
    return split_form(data, split, gv).split_coefficient


def base_coefficient(data: LieAlgebraData, split: SplitBasisData) -> ExactScalar:
    """β with dist ∧ P_1 ∧ … ∧ P_q = β · (unit volume form of G/K_G)."""

    covectors = (split.distinguished,) + split.plus
    generators = split.base_generators
    if len(generators) != len(covectors):
        raise PreconditionError(f"{data.family} carries no base metric")
    pairing = [
        [sum((c * x.get(k, Fraction(0)) for k, c in xi.items()), Fraction(0)) for x in generators]
        for xi in covectors
    ]
    if data.matrices is not None and split.metric_scale is not None:
        matrices = [from_vector(data.matrices, x) for x in generators]
        for i, a in enumerate(matrices):
            for j in range(i + 1, len(matrices)):
                if trace_product(a, transpose(matrices[j])):
                    raise SplitError(f"base generators {i} and {j} are not orthogonal")
        norms = [
            ExactScalar.of(split.metric_scale * trace_product(a, transpose(a))).sqrt()
            for a in matrices
        ]
    else:
        norms = list(split.stored_base_norms)
    volume = ONE
    for norm in norms:
        volume = volume * norm
    return abs(ExactScalar.of(determinant(pairing))) / volume


def fiber_norm(split: SplitBasisData) -> ExactScalar:
    """ν with M_1 ∧ … ∧ M_q = ν · (unit volume form of the fiber sphere)."""

    if split.fiber_norm is not None:
        return split.fiber_norm
    if not split.fiber_blocks:
        raise PreconditionError("no fiber normalisation")
    value = ONE
    for block in split.fiber_blocks:
        value = value * (2 * ExactScalar.of(block.scale)) ** Fraction(block.size, 2)
    return value


def fiber_integral(spec: FamilySpec, result: CharacteristicResult | None = None) -> FiberIntegral:
    if spec.family is Family.SL_PROJ:
        raise PreconditionError("c_G is defined for the rank-one families")
    data, split = build_family(spec)
    result = result or delta_gv(data, split)
    integral = FiberIntegral(
        family=spec,
        split_coefficient=split_coefficient(data, split, result.delta_gv),
        base_coefficient=base_coefficient(data, split),
        fiber_norm=fiber_norm(split),
        sphere_volume=sphere_volume(spec.q),
    )
    logger.info("Integrated along the fiber", extra={"family": str(spec), "c_G": integral.c_G.render()})
    return integral


def compute_cG(spec: FamilySpec) -> ExactScalar:
    return fiber_integral(spec).c_G


def _adjoint_images(data: LieAlgebraData, signs: tuple[int, ...]) -> list[MultiForm]:
    """Pullbacks of the dual basis along Ad(s) for a diagonal s with s = s^{-1}."""

    assert data.matrices is not None
    s = diagonal(signs)
    images: list[dict[int, Fraction]] = [{} for _ in range(data.dim)]
    for k, matrix in enumerate(data.matrices):
        for i, c in data.coordinates_of(multiply(multiply(s, matrix), s)).items():
            images[i][k] = c
    return [MultiForm.covector(data.dim, image) for image in images]


def even_sl_vanishing(q: int) -> VanishingCertificate:
    """Certificate that the base factor is odd under an element of K_G normalising K_P."""

    if q % 2:
        raise PreconditionError(f"the antipodal certificate needs even q, got q={q}")
    data, split = build_family(FamilySpec(Family.SL_PROJ, q))
    result = delta_gv(data, split)
    decomposition = split_form(data, split, result.delta_gv)
    signs = (-1, -1) + (1,) * (q - 1)
    images = _adjoint_images(data, signs)

    def sign_of(original: MultiForm) -> int:
        pulled = pullback(original, images)
        if pulled == original:
            return 1
        if pulled == -original:
            return -1
        raise SplitError("factor is not an eigenform of the antipodal element")

    base_pulled = pullback(decomposition.base_factor, images)
    normalizes = True
    for vector in data.subspace("k_P").vectors:
        image = data.coordinates_of(
            multiply(multiply(diagonal(signs), from_vector(data.matrices or (), vector)), diagonal(signs))
        )
        if image != vector and image != {k: -c for k, c in vector.items()}:
            normalizes = False
    certificate = VanishingCertificate(
        q=q,
        split_coefficient=decomposition.split_coefficient,
        antipodal=signs,
        base_factor=decomposition.base_factor,
        pulled_back_base=base_pulled,
        base_sign=sign_of(decomposition.base_factor),
        fiber_sign=sign_of(decomposition.fiber_factor),
        normalizes_k_P=normalizes,
        gv_invariant=pullback(result.delta_gv, images) == result.delta_gv,
    )
    logger.info("Built vanishing certificate", extra={"q": q, "base_sign": certificate.base_sign})
    return certificate
