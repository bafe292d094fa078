"""Compact duals and the Euler-characteristic constant r_G."""

import math
from dataclasses import dataclass

from app.core.exact_scalar import ExactScalar, sphere_volume
from app.core.fiber_integration import compute_cG
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import NoEulerProportionalityError, PreconditionError
from app.utils.logger import logger as parent_logger

logger = parent_logger.getChild("proportionality")


@dataclass(frozen=True, slots=True)
class CompactDualData:
    name: str
    euler_number: int
    volume: ExactScalar


def compact_dual(spec: FamilySpec) -> CompactDualData:
    """The compact dual G_u/K_G with its Euler number and Killing volume."""

    n = spec.n
    pi = ExactScalar.pi_power
    match spec.family:
        case Family.SO_CONF:
            assert n is not None
            if n % 2 == 0:
                raise NoEulerProportionalityError(
                    f"RP^{n + 1} is odd-dimensional with vanishing Euler number"
                )
            volume = (
                ExactScalar.of(2) ** ((n - 1) // 2)
                * ExactScalar.of(n) ** ((n + 1) // 2)
                * sphere_volume(n + 1)
            )
            return CompactDualData(f"RP^{n + 1}", 1, volume)
        case Family.SU_CR:
            assert n is not None
            volume = (
                ExactScalar.of(2) ** (n + 1)
                * ExactScalar.of(n + 2) ** (n + 1)
                * pi(n + 1)
                / math.factorial(n + 1)
            )
            return CompactDualData(f"CP^{n + 1}", n + 2, volume)
        case Family.SP:
            assert n is not None
            volume = (
                ExactScalar.of(2) ** (6 * (n + 1))
                * ExactScalar.of(n + 3) ** (n + 1)
                * pi(2 * (n + 1))
                / math.factorial(2 * n + 3)
            )
            return CompactDualData(f"HP^{n + 1}", n + 2, volume)
        case Family.F4:
            volume = ExactScalar.of(72) ** 8 * 6 * pi(8) / math.factorial(11)
            return CompactDualData("OP^2", 3, volume)
        case Family.SL_PROJ:
            raise PreconditionError("the projective family has no Euler proportionality")


def rG_from_cG(spec: FamilySpec, c_G: ExactScalar) -> ExactScalar:
    """r_G = (-1)^{(q+1)/2} · c_G · vol(G_u/K_G) / e(G_u/K_G)."""

    dual = compact_dual(spec)
    q = spec.q
    if q == 1:
        raise NoEulerProportionalityError(f"{spec}: proportionality holds for q > 1 only")
    if (q + 1) % 2:
        raise PreconditionError(f"q + 1 = {q + 1} is odd")
    sign = -1 if ((q + 1) // 2) % 2 else 1
    return c_G * dual.volume / dual.euler_number * sign


def compute_rG(spec: FamilySpec) -> ExactScalar:
    dual = compact_dual(spec)
    value = rG_from_cG(spec, compute_cG(spec))
    logger.info(
        "Computed r_G", extra={"family": str(spec), "dual": dual.name, "r_G": value.render()}
    )
    return value
