"""Exact scalars of the form ±∏ p^(e_p) · π^m with half-integer prime exponents.

Every constant in the pipeline (Killing normalisations, sphere volumes, c_G, r_G)
lives in this multiplicative group. Addition is deliberately absent; sums are
carried by MultiForm coefficients, which stay rational.
"""

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Any, Self

import sympy

from app.core.utils.error import (
    NonHalfIntegerExponentError,
    ScalarDivisionByZeroError,
    ScalarError,
    ScalarParseError,
)

Number = int | Fraction

_FACTOR = re.compile(
    r"^(?P<base>pi|\d+)(?:\^(?:(?P<int>-?\d+)|\((?P<num>-?\d+)/(?P<den>\d+)\)))?$"
)


def _half_integer(value: Fraction) -> Fraction:
    if (value * 2).denominator != 1:
        raise NonHalfIntegerExponentError(str(value))
    return value


@dataclass(frozen=True, slots=True)
class ExactScalar:
    sign: int
    primes: tuple[tuple[int, Fraction], ...] = ()
    pi: int = 0

    def __post_init__(self) -> None:
        if type(self.sign) is not int or self.sign not in (-1, 0, 1):
            raise ScalarError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.sign == 0 and (self.primes or self.pi):
            raise ScalarError("zero carries no factors")
        previous = 1
        for p, e in self.primes:
            if p <= previous or e == 0:
                raise ScalarError(f"non-canonical prime factor {p}^{e}")
            _half_integer(e)
            previous = p

    # construction

    @classmethod
    def _build(cls, sign: int, exponents: dict[int, Fraction], pi: int = 0) -> Self:
        if sign == 0:
            return cls(0)
        cleaned = tuple(
            (p, _half_integer(Fraction(e)))
            for p, e in sorted(exponents.items())
            if e != 0
        )
        return cls(sign, cleaned, pi)

    @classmethod
    def zero(cls) -> Self:
        return cls(0)

    @classmethod
    def one(cls) -> Self:
        return cls(1)

    @classmethod
    def of(cls, value: Number, *, pi: int = 0) -> Self:
        """The scalar `value · π^pi` for a rational `value`."""

        value = Fraction(value)
        if value == 0:
            return cls(0)
        exponents: dict[int, Fraction] = {}
        for p, k in sympy.factorint(abs(value.numerator)).items():
            exponents[int(p)] = exponents.get(int(p), Fraction(0)) + k
        for p, k in sympy.factorint(value.denominator).items():
            exponents[int(p)] = exponents.get(int(p), Fraction(0)) - k
        return cls._build(1 if value > 0 else -1, exponents, pi)

    @classmethod
    def pi_power(cls, m: int) -> Self:
        return cls(1, (), m)

    @classmethod
    def factorial(cls, k: int) -> Self:
        if k < 0:
            raise ScalarError(f"factorial of negative integer {k}")
        return cls.of(math.factorial(k))

    @classmethod
    def parse(cls, text: str) -> Self:
        """Inverse of `render`; also accepts composite bases such as `72^8`."""

        source = text.strip().replace(" ", "")
        if source in ("0", "-0"):
            return cls(0)
        sign = 1
        if source.startswith("-"):
            sign, source = -1, source[1:]
        if not source:
            raise ScalarParseError(repr(text))
        result = cls(sign)
        for factor in source.split("*"):
            match = _FACTOR.match(factor)
            if match is None:
                raise ScalarParseError(f"bad factor {factor!r} in {text!r}")
            if match["int"] is not None:
                exponent = Fraction(int(match["int"]))
            elif match["num"] is not None:
                exponent = Fraction(int(match["num"]), int(match["den"]))
            else:
                exponent = Fraction(1)
            if match["base"] == "pi":
                if exponent.denominator != 1:
                    raise ScalarParseError(f"pi exponent must be an integer: {factor!r}")
                result = result * cls.pi_power(int(exponent))
            else:
                base = int(match["base"])
                if base == 0:
                    raise ScalarParseError(f"zero factor in {text!r}")
                result = result * cls.of(base) ** exponent
        return result

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> Self:
        exponents = {int(p): Fraction(e) for p, e in payload.get("primes", {}).items()}
        return cls._build(int(payload["sign"]), exponents, int(payload.get("pi", 0)))

    # predicates

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def is_rational(self) -> bool:
        return self.pi == 0 and all(e.denominator == 1 for _, e in self.primes)

    def exponent_of(self, p: int) -> Fraction:
        return dict(self.primes).get(p, Fraction(0))

    # arithmetic

    def _coerce(self, other: "ExactScalar | Number") -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar.of(other)
        return NotImplemented

    def __mul__(self, other: "ExactScalar | Number") -> "ExactScalar":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        if self.is_zero or rhs.is_zero:
            return ExactScalar(0)
        exponents = dict(self.primes)
        for p, e in rhs.primes:
            exponents[p] = exponents.get(p, Fraction(0)) + e
        return ExactScalar._build(self.sign * rhs.sign, exponents, self.pi + rhs.pi)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero:
            raise ScalarDivisionByZeroError("inverse of zero")
        return ExactScalar(self.sign, tuple((p, -e) for p, e in self.primes), -self.pi)

    def __truediv__(self, other: "ExactScalar | Number") -> "ExactScalar":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: Number) -> "ExactScalar":
        return ExactScalar.of(other) * self.inverse()

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.sign, self.primes, self.pi)

    def __abs__(self) -> "ExactScalar":
        return ExactScalar(abs(self.sign), self.primes, self.pi)

    def __pow__(self, exponent: Number) -> "ExactScalar":
        k = Fraction(exponent)
        if self.is_zero:
            if k < 0:
                raise ScalarDivisionByZeroError("negative power of zero")
            return ExactScalar.one() if k == 0 else ExactScalar(0)
        if k.denominator != 1 and self.sign < 0:
            raise ScalarError(f"fractional power {k} of a negative scalar")
        pi = self.pi * k
        if pi.denominator != 1:
            raise ScalarError(f"power {k} leaves a fractional power of pi")
        # fractional powers of negatives were rejected above
        sign = -1 if self.sign < 0 and k.numerator % 2 else 1
        exponents = {p: e * k for p, e in self.primes}
        return ExactScalar._build(sign, exponents, int(pi))

    def sqrt(self) -> "ExactScalar":
        if self.sign < 0:
            raise ScalarError("square root of a negative scalar")
        return self ** Fraction(1, 2)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ScalarError(f"{self.render()} is not rational")
        value = Fraction(self.sign)
        for p, e in self.primes:
            value *= Fraction(p) ** int(e)
        return value

    def split_rational(self) -> tuple[Fraction, "ExactScalar"]:
        """Write self as `rational · residue` with residue = ∏ p^(1/2) · π^m."""

        if self.is_zero:
            return Fraction(0), ExactScalar.one()
        rational = Fraction(self.sign)
        residue: dict[int, Fraction] = {}
        for p, e in self.primes:
            whole = math.floor(e)
            rational *= Fraction(p) ** whole
            if e != whole:
                residue[p] = e - whole
        return rational, ExactScalar._build(1, residue, self.pi)

    # rendering

    def render(self) -> str:
        if self.is_zero:
            return "0"
        factors = [_render_factor(str(p), e) for p, e in self.primes]
        if self.pi:
            factors.append(_render_factor("pi", Fraction(self.pi)))
        body = "*".join(factors) if factors else "1"
        return f"-{body}" if self.sign < 0 else body

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict[str, Any]:
        return {
            "sign": self.sign,
            "primes": {str(p): str(e) for p, e in self.primes},
            "pi": self.pi,
        }

    def to_sympy(self) -> sympy.Expr:
        expr: sympy.Expr = sympy.Integer(self.sign)
        for p, e in self.primes:
            expr = expr * sympy.Pow(sympy.Integer(p), sympy.Rational(e.numerator, e.denominator))
        return expr * sympy.pi**self.pi

    def to_decimal(self, digits: int) -> str:
        """Correctly rounded decimal expansion with `digits` places."""

        if digits < 1:
            raise ScalarError(f"digits must be at least 1, got {digits}")
        if self.is_zero:
            return "0"
        if self.is_rational:
            scaled = round(self.to_fraction() * 10**digits)
            return _format_scaled(scaled, digits)
        magnitude = sum(float(e) * math.log10(p) for p, e in self.primes)
        magnitude += self.pi * math.log10(math.pi)
        precision = digits + max(0, math.ceil(magnitude)) + 20
        approx = Decimal(str(sympy.N(self.to_sympy(), precision)))
        quantum = Decimal(1).scaleb(-digits)
        rounded = approx.quantize(
            quantum, rounding=ROUND_HALF_EVEN, context=Context(prec=precision + 10)
        )
        text = format(rounded, "f")
        if text.startswith("-") and set(text[1:]) <= {"0", "."}:
            text = text[1:]
        return text


def _render_factor(base: str, exponent: Fraction) -> str:
    if exponent == 1:
        return base
    if exponent.denominator == 1:
        return f"{base}^{exponent.numerator}"
    return f"{base}^({exponent.numerator}/{exponent.denominator})"


def _format_scaled(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return f"{sign}{text}"
    whole, fraction = text[:-digits], text[-digits:]
    if sign and set(whole + fraction) == {"0"}:
        sign = ""
    return f"{sign}{whole}.{fraction}"


ZERO = ExactScalar.zero()
ONE = ExactScalar.one()
TWO_PI = ExactScalar.of(2, pi=1)


def sphere_volume(q: int) -> ExactScalar:
    """Volume of the unit round sphere S^q."""

    if q < 1:
        raise ScalarError(f"sphere dimension must be positive, got {q}")
    if q % 2 == 1:
        denominator = math.prod(range(2, q, 2))
        return ExactScalar.of(2, pi=1) ** ((q + 1) // 2) / denominator
    denominator = math.prod(range(1, q, 2))
    return 2 * ExactScalar.of(2, pi=1) ** (q // 2) / denominator
