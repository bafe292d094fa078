from collections.abc import Iterator
from typing import NamedTuple

from app.core import formulas
from app.core.chern_weil import delta_gv
from app.core.exact_scalar import TWO_PI, ExactScalar
from app.core.families import build_family
from app.core.fiber_integration import fiber_integral
from app.core.lie_core import Family, FamilySpec
from app.core.proportionality import rG_from_cG
from app.core.weil_wo import gv_normalize, vey_dimensions, wo_cohomology
from app.services.utils.error import VerificationMismatchError
from app.services.utils.utils import BaseService
from app.utils.logger import logger
from app.utils.settings import Settings


class VerificationRow(NamedTuple):
    check: str
    subject: str
    expected: ExactScalar
    computed: ExactScalar

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


class VerificationService(BaseService):
    """Recomputes every tabulated constant and compares it with its closed form."""

    def __init__(self, settings: Settings) -> None:
        super().__init__(settings)
        self.logger = logger.getChild("verification")

    def specs(self) -> Iterator[FamilySpec]:
        s = self.settings
        yield from (FamilySpec(Family.SL_PROJ, q) for q in range(1, s.n_max_sl + 1))
        yield from (FamilySpec(Family.SO_CONF, n) for n in range(1, s.n_max_so + 1))
        yield from (FamilySpec(Family.SU_CR, n) for n in range(0, s.n_max_su + 1))
        yield from (FamilySpec(Family.SP, n) for n in range(0, s.n_max_sp + 1))
        yield FamilySpec(Family.F4)

    def family_rows(self, spec: FamilySpec) -> list[VerificationRow]:
        data, split = build_family(spec)
        result = delta_gv(data, split)
        subject = str(spec)
        rows = [
            VerificationRow("gv_coefficient", subject, formulas.gv_coefficient(spec), result.gv_coefficient),
            VerificationRow(
                "gv_normalized",
                subject,
                formulas.gv_coefficient(spec) * TWO_PI ** (spec.q + 1),
                gv_normalize(result.delta_gv, spec.q).ratio_to(result.reference),
            ),
        ]
        if spec.family is Family.SL_PROJ:
            return rows
        integral = fiber_integral(spec, result)
        rows += [
            VerificationRow("split_coefficient", subject, formulas.split_coefficient(spec), integral.split_coefficient),
            VerificationRow("base_coefficient", subject, formulas.base_coefficient(spec), integral.base_coefficient),
            VerificationRow("fiber_norm", subject, formulas.fiber_norm(spec), integral.fiber_norm),
            VerificationRow("c_G", subject, formulas.c_G(spec), integral.c_G),
        ]
        even_sphere = spec.family is Family.SO_CONF and spec.n is not None and spec.n % 2 == 0
        if spec.q > 1 and not even_sphere:
            rows.append(VerificationRow("r_G", subject, formulas.r_G(spec), rG_from_cG(spec, integral.c_G)))
        return rows

    def wo_rows(self) -> list[VerificationRow]:
        rows = []
        for q in range(1, self.settings.wo_q_max + 1):
            expected = vey_dimensions(q)
            computed = wo_cohomology(q)
            for degree in sorted(set(expected) | set(computed)):
                rows.append(
                    VerificationRow(
                        f"betti[{degree}]",
                        f"WO_{q}",
                        ExactScalar.of(expected.get(degree, 0)),
                        ExactScalar.of(computed.get(degree, 0)),
                    )
                )
        return rows

    def run(self) -> list[VerificationRow]:
        rows: list[VerificationRow] = []
        for spec in self.specs():
            rows.extend(self.family_rows(spec))
            self.logger.info("Verified family", extra={"family": str(spec)})
        rows.extend(self.wo_rows())
        return rows

    def check(self, rows: list[VerificationRow]) -> VerificationMismatchError | None:
        failed = sum(1 for row in rows if not row.ok)
        if failed:
            return VerificationMismatchError(failed, len(rows))
        return None
