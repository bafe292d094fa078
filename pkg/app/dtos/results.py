from typing import Self

from pydantic import BaseModel

from app.core.chern_weil import CharacteristicResult
from app.core.exact_scalar import ExactScalar
from app.core.exterior import MultiForm
from app.core.fiber_integration import FiberIntegral, VanishingCertificate
from app.core.lie_core import FamilySpec, LieAlgebraData, ValidationFailure
from app.core.root_core import RootSystemData, root_sum
from app.core.weil_wo import WOMonomial
from app.dtos.utils.utils import LabelStr, RationalStr, ScalarStr
from app.services.characteristic import ProportionalityResult
from app.services.verification import VerificationRow


class ScalarResponse(BaseModel):
    canonical: ScalarStr
    sign: int
    primes: dict[str, RationalStr]
    pi: int
    decimal: str | None = None

    @classmethod
    def from_scalar(cls, value: ExactScalar, digits: int | None = None) -> Self:
        payload = value.to_json()
        return cls(
            canonical=value.render(),
            sign=payload["sign"],
            primes=payload["primes"],
            pi=payload["pi"],
            decimal=value.to_decimal(digits) if digits is not None else None,
        )

    def to_scalar(self) -> ExactScalar:
        return ExactScalar.parse(self.canonical)


class TermResponse(BaseModel):
    basis: list[LabelStr]
    coefficient: RationalStr


class FormResponse(BaseModel):
    degree: int
    prefactor: ScalarStr
    terms: list[TermResponse]

    @classmethod
    def from_form(cls, form: MultiForm, labels: tuple[str, ...]) -> Self:
        return cls(
            degree=form.degree,
            prefactor=form.prefactor.render(),
            terms=[
                TermResponse(basis=[labels[i] for i in monomial], coefficient=str(form.terms[monomial]))
                for monomial in sorted(form.terms)
            ],
        )


def _family_fields(spec: FamilySpec) -> dict:
    return {"family": str(spec.family), "parameter": spec.n, "q": spec.q}


class CharacteristicResponse(BaseModel):
    family: str
    parameter: int | None
    q: int
    reference_form: str
    gv_coefficient: ScalarResponse
    gv_normalized: ScalarResponse
    delta_h1: FormResponse
    delta_c1: FormResponse
    delta_gv: FormResponse
    c_G: ScalarResponse | None = None
    r_G: ScalarResponse | None = None
    extras: dict[str, ScalarResponse] = {}
    notes: list[str] = []

    @classmethod
    def from_result(cls, result: CharacteristicResult, labels: tuple[str, ...], digits: int | None) -> Self:
        def scalar(value: ExactScalar | None) -> ScalarResponse | None:
            return None if value is None else ScalarResponse.from_scalar(value, digits)

        return cls(
            **_family_fields(result.family),
            reference_form=result.reference_label,
            gv_coefficient=ScalarResponse.from_scalar(result.gv_coefficient, digits),
            gv_normalized=ScalarResponse.from_scalar(result.normalized_coefficient, digits),
            delta_h1=FormResponse.from_form(result.delta_h1, labels),
            delta_c1=FormResponse.from_form(result.delta_c1, labels),
            delta_gv=FormResponse.from_form(result.delta_gv, labels),
            c_G=scalar(result.c_G),
            r_G=scalar(result.r_G),
            extras={key: ScalarResponse.from_scalar(v, digits) for key, v in sorted(result.extras.items())},
            notes=list(result.notes),
        )


class ConstantResponse(BaseModel):
    family: str
    parameter: int | None
    q: int
    c_G: ScalarResponse
    split_coefficient: ScalarResponse
    fiber_coefficient: ScalarResponse
    base_coefficient: ScalarResponse
    fiber_norm: ScalarResponse
    sphere_volume: ScalarResponse

    @classmethod
    def from_integral(cls, integral: FiberIntegral, digits: int | None) -> Self:
        def s(value: ExactScalar) -> ScalarResponse:
            return ScalarResponse.from_scalar(value, digits)

        return cls(
            **_family_fields(integral.family),
            c_G=s(integral.c_G),
            split_coefficient=s(integral.split_coefficient),
            fiber_coefficient=s(integral.fiber_coefficient),
            base_coefficient=s(integral.base_coefficient),
            fiber_norm=s(integral.fiber_norm),
            sphere_volume=s(integral.sphere_volume),
        )


class ProportionalityResponse(BaseModel):
    family: str
    parameter: int | None
    q: int
    compact_dual: str
    euler_number: int
    volume: ScalarResponse
    c_G: ScalarResponse
    r_G: ScalarResponse

    @classmethod
    def from_result(cls, result: ProportionalityResult, digits: int | None) -> Self:
        return cls(
            **_family_fields(result.family),
            compact_dual=result.dual.name,
            euler_number=result.dual.euler_number,
            volume=ScalarResponse.from_scalar(result.dual.volume, digits),
            c_G=ScalarResponse.from_scalar(result.integral.c_G, digits),
            r_G=ScalarResponse.from_scalar(result.r_G, digits),
        )


class VeyClassResponse(BaseModel):
    label: str
    degree: int
    kind: str


class VeyBasisResponse(BaseModel):
    q: int
    classes: list[VeyClassResponse]
    dimensions: dict[int, int]

    @classmethod
    def from_basis(cls, q: int, basis: list[WOMonomial], dimensions: dict[int, int]) -> Self:
        return cls(
            q=q,
            classes=[
                VeyClassResponse(
                    label=m.label(),
                    degree=m.degree,
                    kind="pontryagin" if m.is_pontryagin else "exotic",
                )
                for m in basis
            ],
            dimensions=dimensions,
        )


class WOCohomologyResponse(BaseModel):
    q: int
    betti: dict[int, int]


class RootResponse(BaseModel):
    coordinates: list[RationalStr]
    levi: bool
    coroot: list[RationalStr] | None = None


class RootTableResponse(BaseModel):
    family: str
    parameter: int | None
    rank: int
    roots: list[RootResponse]
    psi_sum: list[RationalStr]

    @classmethod
    def from_roots(cls, roots: RootSystemData) -> Self:
        levi = set(roots.levi_roots)
        return cls(
            family=str(roots.family.family),
            parameter=roots.family.n,
            rank=roots.rank,
            roots=[
                RootResponse(
                    coordinates=[str(x) for x in root],
                    levi=root in levi,
                    coroot=[str(x) for x in roots.coroots[root]] if root in roots.coroots else None,
                )
                for root in roots.positive_roots
            ],
            psi_sum=[str(x) for x in root_sum(roots.psi, roots.rank)],
        )


class BracketResponse(BaseModel):
    left: LabelStr
    right: LabelStr
    image: dict[str, RationalStr]


class ValidationFailureResponse(BaseModel):
    axiom: str
    witness: list[int]
    detail: str


class AlgebraDumpResponse(BaseModel):
    family: str
    parameter: int | None
    dim: int
    backend: str
    labels: list[LabelStr]
    brackets: list[BracketResponse]
    subspaces: dict[str, list[dict[str, RationalStr]]]
    validation: list[ValidationFailureResponse]

    @classmethod
    def from_algebra(cls, data: LieAlgebraData, failures: list[ValidationFailure]) -> Self:
        labels = data.labels
        return cls(
            family=str(data.family.family),
            parameter=data.family.n,
            dim=data.dim,
            backend=str(data.backend),
            labels=list(labels),
            brackets=[
                BracketResponse(
                    left=labels[i],
                    right=labels[j],
                    image={labels[k]: str(c) for k, c in sorted(image.items())},
                )
                for (i, j), image in sorted(data.structure.items())
                if image
            ],
            subspaces={
                name: [{labels[k]: str(c) for k, c in sorted(v.items())} for v in space.vectors]
                for name, space in sorted(data.subspaces.items())
            },
            validation=[
                ValidationFailureResponse(axiom=f.axiom, witness=list(f.witness), detail=f.detail)
                for f in failures
            ],
        )


class VanishingResponse(BaseModel):
    q: int
    split_coefficient: ScalarResponse
    antipodal: list[int]
    base_factor: FormResponse
    pulled_back_base: FormResponse
    base_sign: int
    fiber_sign: int
    normalizes_k_P: bool
    gv_invariant: bool

    @classmethod
    def from_certificate(
        cls, certificate: VanishingCertificate, labels: tuple[str, ...], digits: int | None
    ) -> Self:
        return cls(
            q=certificate.q,
            split_coefficient=ScalarResponse.from_scalar(certificate.split_coefficient, digits),
            antipodal=list(certificate.antipodal),
            base_factor=FormResponse.from_form(certificate.base_factor, labels),
            pulled_back_base=FormResponse.from_form(certificate.pulled_back_base, labels),
            base_sign=certificate.base_sign,
            fiber_sign=certificate.fiber_sign,
            normalizes_k_P=certificate.normalizes_k_P,
            gv_invariant=certificate.gv_invariant,
        )


class VerificationRowResponse(BaseModel):
    check: str
    subject: str
    expected: ScalarStr
    computed: ScalarStr
    ok: bool


class VerificationResponse(BaseModel):
    rows: list[VerificationRowResponse]
    failed: int

    @classmethod
    def from_rows(cls, rows: list[VerificationRow]) -> Self:
        return cls(
            rows=[
                VerificationRowResponse(
                    check=row.check,
                    subject=row.subject,
                    expected=row.expected.render(),
                    computed=row.computed.render(),
                    ok=row.ok,
                )
                for row in rows
            ],
            failed=sum(1 for row in rows if not row.ok),
        )
