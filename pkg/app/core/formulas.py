"""Closed-form values of the tabulated constants.

These are evaluated independently of the exterior-algebra pipeline and serve
as the second code path in `verify-tables` and in the tests.
"""

import math
from fractions import Fraction

from app.core.exact_scalar import TWO_PI, ExactScalar, sphere_volume
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import NoEulerProportionalityError, PreconditionError

PI = ExactScalar.pi_power(1)


def _int(value: int) -> ExactScalar:
    return ExactScalar.of(value)


def _fact(k: int) -> ExactScalar:
    return ExactScalar.factorial(k)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _n(spec: FamilySpec) -> int:
    if spec.n is None:
        raise PreconditionError(f"{spec} has no parameter")
    return spec.n


def gv_coefficient(spec: FamilySpec) -> ExactScalar:
    """Coefficient of Δ(GV) against the family's reference top form."""

    match spec.family:
        case Family.SL_PROJ:
            q = _n(spec)
            return -(_int(q + 1) ** (q + 1)) * _fact(q) / TWO_PI ** (q + 1)
        case Family.SO_CONF:
            n = _n(spec)
            return -(_int(n) ** (n + 1)) * _fact(n) / TWO_PI ** (n + 1)
        case Family.SU_CR:
            n = _n(spec)
            return -2 * _int(n + 1) ** (2 * n + 2) * _fact(2 * n + 1) / TWO_PI ** (2 * n + 2)
        case Family.SP:
            n = _n(spec)
            return -(_int(2 * n + 3) ** (4 * n + 4)) / TWO_PI ** (4 * n + 4)
        case Family.F4:
            return -(_int(11) ** 16) * _int(18) ** 15 * _fact(15) / (_int(2) ** 24 * PI**16)


def split_coefficient(spec: FamilySpec) -> ExactScalar:
    """Coefficient of Δ(GV) against dist ∧ P_1 ∧ … ∧ P_q ∧ M_1 ∧ … ∧ M_q."""

    match spec.family:
        case Family.SL_PROJ:
            q = _n(spec)
            # fiber covectors are u^∨ - v^∨ here, one extra sign per pair
            return (
                _sign(q * (q - 1) // 2 + 1 + q)
                * _int(q + 1) ** (q + 1)
                * _fact(q)
                / (_int(2) ** q * TWO_PI ** (q + 1))
            )
        case Family.SO_CONF:
            n = _n(spec)
            return (
                _sign(n * (n - 1) // 2 + 1)
                * _int(n) ** (n + 1)
                * _fact(n)
                / (_int(2) ** (2 * n + 1) * PI ** (n + 1))
            )
        case Family.SU_CR:
            n = _n(spec)
            return (
                _sign(n + 1)
                * 2
                * _int(n + 1) ** (2 * n + 2)
                * _fact(2 * n + 1)
                / (_int(2) ** (2 * n + 1) * TWO_PI ** (2 * n + 2))
            )
        case Family.SP:
            n = _n(spec)
            return (
                _int(2 * n + 3) ** (4 * n + 4)
                * _fact(4 * n + 3)
                / (_int(2) ** (8 * n + 6) * PI ** (4 * n + 4))
            )
        case Family.F4:
            return _int(11) ** 16 * _int(3) ** 30 * _fact(15) / (_int(2) ** 24 * PI**16)


def base_coefficient(spec: FamilySpec) -> ExactScalar:
    match spec.family:
        case Family.SO_CONF:
            n = _n(spec)
            return (_int(2).sqrt() * _int(n) ** Fraction(n + 1, 2)).inverse()
        case Family.SU_CR:
            n = _n(spec)
            return (_int(n + 2) ** (n + 1)).inverse()
        case Family.SP:
            n = _n(spec)
            return (_int(2) ** (4 * n + 3) * _int(n + 3) ** (2 * n + 2)).inverse()
        case Family.F4:
            return _int(2) ** 7 / 3
        case _:
            raise PreconditionError(f"{spec} has no base metric")


def fiber_norm(spec: FamilySpec) -> ExactScalar:
    match spec.family:
        case Family.SO_CONF:
            return _int(2) ** Fraction(_n(spec), 2)
        case Family.SU_CR:
            return _int(2) ** (3 * _n(spec) + 1)
        case Family.SP:
            return _int(2) ** Fraction(12 * _n(spec) + 7, 2)
        case Family.F4:
            return _int(2) ** 11 * _int(7) ** 4 / _int(3) ** Fraction(23, 2)
        case _:
            raise PreconditionError(f"{spec} has no fiber normalisation")


def c_G(spec: FamilySpec) -> ExactScalar:
    q = spec.q
    match spec.family:
        case Family.SO_CONF:
            n = _n(spec)
            return (
                _sign(n * (n - 1) // 2 + 1)
                * _int(n) ** Fraction(n + 1, 2)
                * _fact(n)
                * sphere_volume(q)
                / (_int(2) ** Fraction(3 * (n + 1), 2) * PI ** (n + 1))
            )
        case Family.SU_CR:
            n = _n(spec)
            return (
                _sign(n + 1)
                * _int(n + 1) ** (2 * n + 2)
                * _fact(2 * n + 1)
                * sphere_volume(q)
                / (_int(2) ** (n + 1) * _int(n + 2) ** (n + 1) * PI ** (2 * n + 2))
            )
        case Family.SP:
            n = _n(spec)
            return (
                _int(2 * n + 3) ** (4 * n + 4)
                * _fact(4 * n + 3)
                * sphere_volume(q)
                / (_int(2) ** Fraction(12 * n + 11, 2) * _int(n + 3) ** (2 * n + 2) * PI ** (4 * n + 4))
            )
        case Family.F4:
            return (
                _int(3) ** Fraction(35, 2)
                * _int(7) ** 4
                * _int(11) ** 16
                * _fact(15)
                * sphere_volume(15)
                / (_int(2) ** 6 * PI**16)
            )
        case _:
            raise PreconditionError("c_G is defined for the rank-one families")


def r_G(spec: FamilySpec) -> ExactScalar:
    if spec.family is not Family.SL_PROJ and spec.q == 1:
        raise NoEulerProportionalityError(f"{spec}: proportionality holds for q > 1 only")
    match spec.family:
        case Family.SO_CONF:
            n = _n(spec)
            if n % 2 == 0:
                raise NoEulerProportionalityError(f"n = {n} is even")
            return _int(n) ** (n + 1)
        case Family.SU_CR:
            n = _n(spec)
            return ExactScalar.of(
                Fraction(
                    2 * (n + 1) ** (2 * n + 2) * math.factorial(2 * n + 1),
                    math.factorial(n) * math.factorial(n + 1) * (n + 2),
                )
            )
        case Family.SP:
            n = _n(spec)
            return _int(2) ** Fraction(3, 2) * ExactScalar.of(
                Fraction(
                    (2 * n + 3) ** (4 * n + 4) * math.factorial(4 * n + 3),
                    math.factorial(2 * n + 1)
                    * math.factorial(2 * n + 3)
                    * (n + 2)
                    * (n + 3) ** (n + 1),
                )
            )
        case Family.F4:
            return _int(2) ** 19 * _int(3) ** Fraction(67, 2) * _int(7) ** 4 * _int(11) ** 16 * 13
        case _:
            raise PreconditionError("r_G is defined for the rank-one families")
