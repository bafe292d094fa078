from fractions import Fraction

import pytest

from app.core import formulas
from app.core.chern_weil import delta_gv
from app.core.exact_scalar import TWO_PI, ExactScalar
from app.core.exterior import MultiForm
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import ParameterOutOfRangeError
from app.core.weil_wo import (
    WOMonomial,
    gv_normalize,
    vey_basis,
    vey_dimensions,
    wo_basis,
    wo_cohomology,
    wo_differential,
)


class TestMonomials:
    def test_degree_and_label(self):
        monomial = WOMonomial((1, 3), (1, 1, 2))
        assert monomial.degree == 1 + 5 + 2 + 2 + 4
        assert monomial.label() == "h1h3c1^2c2"
        assert WOMonomial().label() == "1"

    def test_basis_respects_truncation(self):
        assert all(m.weight <= 2 for m in wo_basis(2))
        assert WOMonomial((1,), (1, 1)) in wo_basis(2)
        assert WOMonomial((), (1, 1, 1)) not in wo_basis(2)

    def test_rejects_nonpositive_codimension(self):
        with pytest.raises(ParameterOutOfRangeError):
            wo_basis(0)


class TestDifferential:
    def test_d_h1_is_c1(self):
        image = wo_differential({WOMonomial((1,), ()): Fraction(1)}, 1)
        assert image == {WOMonomial((), (1,)): Fraction(1)}

    def test_godbillon_vey_is_closed(self):
        for q in (1, 2, 3):
            gv = WOMonomial((1,), (1,) * q)
            assert wo_differential({gv: Fraction(1)}, q) == {}

    def test_d_squares_to_zero(self):
        q = 3
        for monomial in wo_basis(q):
            assert wo_differential(wo_differential({monomial: Fraction(1)}, q), q) == {}

    def test_antiderivation_sign(self):
        image = wo_differential({WOMonomial((1, 3), ()): Fraction(1)}, 4)
        assert image == {
            WOMonomial((3,), (1,)): Fraction(1),
            WOMonomial((1,), (3,)): Fraction(-1),
        }


class TestVeyBasis:
    def test_codimension_one(self):
        assert [m.label() for m in vey_basis(1)] == ["h1c1"]
        assert vey_dimensions(1) == {0: 1, 3: 1}

    def test_codimension_two(self):
        labels = {m.label() for m in vey_basis(2)}
        assert labels == {"c2", "h1c1^2", "h1c2"}

    def test_codimension_three(self):
        assert vey_dimensions(3) == {0: 1, 4: 1, 7: 3, 9: 1, 11: 1, 12: 3}

    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_basis_matches_rank_computation(self, q: int):
        assert wo_cohomology(q) == vey_dimensions(q)

    def test_pontryagin_classes_are_even(self):
        for monomial in vey_basis(3):
            if not monomial.h:
                assert monomial.is_pontryagin


class TestNormalization:
    def test_clears_pi_for_sl2(self, sl2):
        result = delta_gv(*sl2)
        normalized = gv_normalize(result.delta_gv, 1)
        assert normalized.ratio_to(result.reference) == ExactScalar.of(-4)
        assert normalized.prefactor == ExactScalar.one()

    def test_f4(self, f4):
        result = delta_gv(*f4)
        value = gv_normalize(result.delta_gv, 15).ratio_to(result.reference)
        assert value == formulas.gv_coefficient(FamilySpec(Family.F4)) * TWO_PI**16
        assert value.pi == 0

    def test_zero_form(self):
        assert gv_normalize(MultiForm.zero(3, 3), 1).is_zero

    def test_rejects_nonpositive_codimension(self):
        with pytest.raises(ParameterOutOfRangeError):
            gv_normalize(MultiForm.zero(3, 3), 0)
