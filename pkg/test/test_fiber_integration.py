from fractions import Fraction

import pytest

from app.core import formulas
from app.core.chern_weil import delta_gv
from app.core.exact_scalar import ExactScalar
from app.core.exterior import wedge
from app.core.families import build_family
from app.core.fiber_integration import (
    base_coefficient,
    compute_cG,
    even_sl_vanishing,
    fiber_integral,
    fiber_norm,
    split_coefficient,
    split_form,
)
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import PreconditionError

RANK_ONE = [
    *(FamilySpec(Family.SO_CONF, n) for n in (1, 2, 3, 4)),
    *(FamilySpec(Family.SU_CR, n) for n in (0, 1, 2)),
    FamilySpec(Family.SP, 0),
    FamilySpec(Family.F4),
]


class TestBaseFactor:
    @pytest.mark.parametrize(
        "spec, expected",
        [
            (FamilySpec(Family.SO_CONF, 1), ExactScalar.of(2) ** Fraction(-1, 2)),
            (FamilySpec(Family.SO_CONF, 3), ExactScalar.of(Fraction(1, 9)) / ExactScalar.of(2).sqrt()),
            (FamilySpec(Family.SU_CR, 1), ExactScalar.of(Fraction(1, 9))),
            (FamilySpec(Family.SP, 0), ExactScalar.of(Fraction(1, 72))),
            (FamilySpec(Family.F4), ExactScalar.of(Fraction(128, 3))),
        ],
        ids=str,
    )
    def test_known_values(self, spec: FamilySpec, expected: ExactScalar):
        data, split = build_family(spec)
        assert base_coefficient(data, split) == expected

    @pytest.mark.parametrize("spec", RANK_ONE, ids=str)
    def test_matches_closed_form(self, spec: FamilySpec):
        data, split = build_family(spec)
        assert base_coefficient(data, split) == formulas.base_coefficient(spec)
        assert fiber_norm(split) == formulas.fiber_norm(spec)


class TestSplit:
    @pytest.mark.parametrize(
        "spec", [*RANK_ONE, *(FamilySpec(Family.SL_PROJ, q) for q in (1, 2, 3))], ids=str
    )
    def test_split_coefficient_matches_closed_form(self, spec: FamilySpec):
        data, split = build_family(spec)
        gv = delta_gv(data, split).delta_gv
        assert split_coefficient(data, split, gv) == formulas.split_coefficient(spec)

    def test_factors_reassemble_the_form(self, so3):
        data, split = so3
        gv = delta_gv(data, split).delta_gv
        decomposition = split_form(data, split, gv)
        rebuilt = wedge(decomposition.base_factor, decomposition.fiber_factor)
        assert rebuilt.ratio_to(gv) * decomposition.split_coefficient == ExactScalar.one()


class TestConstant:
    @pytest.mark.parametrize("spec", RANK_ONE, ids=str)
    def test_c_G_matches_closed_form(self, spec: FamilySpec):
        assert compute_cG(spec) == formulas.c_G(spec)

    def test_c_G_for_the_circle(self):
        # so(2,1): -1 · 1 · 1! · 2π / (2^3 π^2)
        assert compute_cG(FamilySpec(Family.SO_CONF, 1)) == ExactScalar.of(Fraction(-1, 4), pi=-1)

    def test_projective_family_has_no_c_G(self):
        with pytest.raises(PreconditionError):
            fiber_integral(FamilySpec(Family.SL_PROJ, 1))


class TestEvenVanishing:
    @pytest.mark.parametrize("q", [2, 4])
    def test_base_factor_is_odd_under_the_antipodal_element(self, q: int):
        certificate = even_sl_vanishing(q)
        assert certificate.antipodal[:2] == (-1, -1)
        assert certificate.base_sign == -1
        assert certificate.fiber_sign == -1
        assert certificate.pulled_back_base == -certificate.base_factor
        assert certificate.normalizes_k_P
        assert certificate.gv_invariant

    def test_odd_codimension_is_rejected(self):
        with pytest.raises(PreconditionError):
            even_sl_vanishing(3)
