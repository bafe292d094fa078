from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import BudgetExceededError
from app.utils.settings import Settings


class BaseService:
    """Base class for all services."""

    def __init__(self, settings: Settings) -> None:
        self.settings = settings

    def check_budget(self, spec: FamilySpec) -> None:
        """Refuse parameters beyond the configured n_max of the family."""

        limits = {
            Family.SL_PROJ: self.settings.n_max_sl,
            Family.SO_CONF: self.settings.n_max_so,
            Family.SU_CR: self.settings.n_max_su,
            Family.SP: self.settings.n_max_sp,
        }
        limit = limits.get(spec.family)
        if limit is not None and spec.n is not None and spec.n > limit:
            raise BudgetExceededError(
                f"{spec} exceeds n_max={limit}; raise GV_N_MAX_{spec.family.name.split('_')[0]}"
            )

    def check_wo_budget(self, q: int) -> None:
        if q > self.settings.wo_q_max:
            raise BudgetExceededError(f"q={q} exceeds wo_q_max={self.settings.wo_q_max}")
