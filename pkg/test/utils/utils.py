import random
from fractions import Fraction
from typing import NamedTuple

import pytest

from app.cli import run
from app.core.exact_scalar import ExactScalar
from app.core.exterior import MultiForm


class CliResult(NamedTuple):
    code: int
    out: str
    err: str


def scalar(text: str) -> ExactScalar:
    return ExactScalar.parse(text)


def random_form(rng: random.Random, dim: int, degree: int, terms: int = 4) -> MultiForm:
    """A form with a few random monomials and small rational coefficients."""

    coefficients: dict[tuple[int, ...], Fraction] = {}
    for _ in range(terms):
        monomial = tuple(sorted(rng.sample(range(dim), degree)))
        coefficients[monomial] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return MultiForm(dim, degree, coefficients)


def run_cli(capsys: pytest.CaptureFixture[str], *args: str) -> CliResult:
    code = run(list(args))
    captured = capsys.readouterr()
    return CliResult(code, captured.out, captured.err)
