from collections.abc import Callable
from dataclasses import dataclass, replace

from app.core.chern_weil import CharacteristicResult, delta_gv
from app.core.exact_scalar import ExactScalar
from app.core.families import build_family
from app.core.fiber_integration import FiberIntegral, VanishingCertificate, even_sl_vanishing, fiber_integral
from app.core.lie_core import Family, FamilySpec, LieAlgebraData, ValidationFailure, validate_lie
from app.core.proportionality import CompactDualData, compact_dual, rG_from_cG
from app.core.root_core import RootSystemData, f4_root_data, root_data_from_algebra
from app.core.utils.error import NoEulerProportionalityError
from app.core.weil_wo import WOMonomial, vey_basis, vey_dimensions, wo_cohomology
from app.services.utils.utils import BaseService
from app.utils.logger import logger
from app.utils.settings import Settings, settings


@dataclass(frozen=True)
class ProportionalityResult:
    family: FamilySpec
    integral: FiberIntegral
    dual: CompactDualData
    r_G: ExactScalar


class CharacteristicService(BaseService):
    def __init__(self, settings: Settings) -> None:
        super().__init__(settings)
        self.logger = logger.getChild("characteristic")

    def characteristic(self, spec: FamilySpec) -> CharacteristicResult:
        """Δ(GV) together with c_G and r_G wherever the family has them."""

        self.check_budget(spec)
        data, split = build_family(spec)
        result = delta_gv(data, split)
        if spec.family is Family.SL_PROJ:
            return result
        integral = fiber_integral(spec, result)
        extras = {
            "split_coefficient": integral.split_coefficient,
            "base_coefficient": integral.base_coefficient,
            "fiber_norm": integral.fiber_norm,
            "sphere_volume": integral.sphere_volume,
        }
        notes = list(result.notes)
        try:
            r_G = rG_from_cG(spec, integral.c_G)
        except NoEulerProportionalityError as e:
            r_G = None
            notes.append(str(e))
        self.logger.info("Characteristic result", extra={"family": str(spec)})
        return replace(result, c_G=integral.c_G, r_G=r_G, extras=extras, notes=tuple(notes))

    def c_g(self, spec: FamilySpec) -> FiberIntegral:
        self.check_budget(spec)
        return fiber_integral(spec)

    def r_g(self, spec: FamilySpec) -> ProportionalityResult:
        self.check_budget(spec)
        dual = compact_dual(spec)
        integral = fiber_integral(spec)
        return ProportionalityResult(spec, integral, dual, rG_from_cG(spec, integral.c_G))

    def roots(self, spec: FamilySpec) -> RootSystemData:
        self.check_budget(spec)
        if spec.family is Family.F4:
            return f4_root_data()
        data, _ = build_family(spec)
        return root_data_from_algebra(data)

    def algebra(self, spec: FamilySpec) -> tuple[LieAlgebraData, list[ValidationFailure]]:
        self.check_budget(spec)
        data, _ = build_family(spec)
        return data, validate_lie(data)

    def vey(self, q: int) -> tuple[list[WOMonomial], dict[int, int]]:
        self.check_wo_budget(q)
        return vey_basis(q), vey_dimensions(q)

    def wo_cohomology(self, q: int) -> dict[int, int]:
        self.check_wo_budget(q)
        return wo_cohomology(q)

    def vanishing(self, q: int) -> VanishingCertificate:
        self.check_budget(FamilySpec(Family.SL_PROJ, q))
        return even_sl_vanishing(q)


def create_get_characteristic_service() -> Callable[[], CharacteristicService]:
    characteristic_service: CharacteristicService | None = None

    def get_characteristic_service() -> CharacteristicService:
        nonlocal characteristic_service
        if characteristic_service is None:
            characteristic_service = CharacteristicService(settings)
        return characteristic_service

    return get_characteristic_service


get_characteristic_service = create_get_characteristic_service()
