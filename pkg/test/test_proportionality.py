from fractions import Fraction

import pytest

from app.core import formulas
from app.core.exact_scalar import ExactScalar
from app.core.lie_core import Family, FamilySpec
from app.core.proportionality import compact_dual, compute_rG, rG_from_cG
from app.core.utils.error import NoEulerProportionalityError, PreconditionError


class TestCompactDual:
    def test_real_projective_space(self):
        dual = compact_dual(FamilySpec(Family.SO_CONF, 3))
        assert dual.name == "RP^4"
        assert dual.euler_number == 1
        assert dual.volume == ExactScalar.of(48, pi=2)

    def test_complex_projective_line(self):
        dual = compact_dual(FamilySpec(Family.SU_CR, 0))
        assert (dual.name, dual.euler_number) == ("CP^1", 2)
        assert dual.volume == ExactScalar.of(4, pi=1)

    def test_quaternionic_and_octonionic_planes(self):
        assert compact_dual(FamilySpec(Family.SP, 1)).euler_number == 3
        assert compact_dual(FamilySpec(Family.F4)).name == "OP^2"

    def test_even_conformal_spheres_have_no_proportionality(self):
        with pytest.raises(NoEulerProportionalityError):
            compact_dual(FamilySpec(Family.SO_CONF, 2))

    def test_projective_family_has_no_dual(self):
        with pytest.raises(PreconditionError):
            compact_dual(FamilySpec(Family.SL_PROJ, 3))


@pytest.mark.parametrize(
    "spec, expected",
    [
        (FamilySpec(Family.SO_CONF, 3), ExactScalar.of(81)),
        (FamilySpec(Family.SO_CONF, 5), ExactScalar.of(15625)),
        (FamilySpec(Family.SU_CR, 1), ExactScalar.of(32)),
        (FamilySpec(Family.SU_CR, 2), ExactScalar.of(3645)),
        (FamilySpec(Family.SP, 0), ExactScalar.of(27) * ExactScalar.of(2).sqrt()),
    ],
    ids=str,
)
def test_r_G_values(spec: FamilySpec, expected: ExactScalar):
    assert compute_rG(spec) == expected


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec(Family.SU_CR, 3),
        FamilySpec(Family.SP, 1),
        FamilySpec(Family.F4),
    ],
    ids=str,
)
def test_r_G_matches_closed_form(spec: FamilySpec):
    assert compute_rG(spec) == formulas.r_G(spec)


def test_f4_constant():
    expected = (
        ExactScalar.of(2) ** 19
        * ExactScalar.of(3) ** Fraction(67, 2)
        * ExactScalar.of(7) ** 4
        * ExactScalar.of(11) ** 16
        * 13
    )
    assert rG_from_cG(FamilySpec(Family.F4), formulas.c_G(FamilySpec(Family.F4))) == expected


@pytest.mark.parametrize("spec", [FamilySpec(Family.SO_CONF, 1), FamilySpec(Family.SU_CR, 0)], ids=str)
def test_codimension_one_has_no_r_G(spec: FamilySpec):
    with pytest.raises(NoEulerProportionalityError):
        compute_rG(spec)
    with pytest.raises(NoEulerProportionalityError):
        formulas.r_G(spec)
