from fractions import Fraction

import pytest

from app.core import formulas
from app.core.chern_weil import (
    chern_forms,
    curvature,
    delta_cJ,
    delta_gv,
    matrix_product,
    pittie_connection,
    trace,
)
from app.core.exact_scalar import TWO_PI, ExactScalar
from app.core.exterior import MultiForm, ce_d, contract, hat_d
from app.core.families import build_family
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import BackendMismatchError


class TestSl2:
    """The classical identities for the projective line."""

    def test_delta_h1(self, sl2):
        data, split = sl2
        result = delta_gv(data, split)
        assert result.delta_h1 == MultiForm.basis(3, 0).scale(ExactScalar.of(-1, pi=-1))

    def test_delta_c1(self, sl2):
        data, split = sl2
        result = delta_gv(data, split)
        expected = (MultiForm.basis(3, 1) ^ MultiForm.basis(3, 2)).scale(ExactScalar.pi_power(-1))
        assert result.delta_c1 == expected

    def test_godbillon_vey_coefficient(self, sl2):
        data, split = sl2
        result = delta_gv(data, split)
        assert result.gv_coefficient == ExactScalar.of(-1, pi=-2)
        assert result.normalized_coefficient == ExactScalar.of(-4)
        assert result.reference_label == "H_1^∨∧E_12^∨∧E_21^∨"


class TestCurvature:
    @pytest.mark.parametrize("name", ["sl2", "sl3", "so2", "so3", "su1", "sp0"])
    def test_curvature_is_the_projected_differential(self, name: str, request: pytest.FixtureRequest):
        data, _ = request.getfixturevalue(name)
        theta = pittie_connection(data)
        omega = curvature(theta, data)
        for i, row in enumerate(theta):
            for j, entry in enumerate(row):
                assert omega[i][j] == hat_d(entry, data)

    def test_connection_vanishes_on_v(self, so3):
        data, _ = so3
        v = set(data.subspace("v").indices)
        for row in pittie_connection(data):
            for entry in row:
                assert not entry.support() & v

    def test_first_chern_form_is_d_of_h1(self, su1):
        data, split = su1
        omega = curvature(pittie_connection(data), data)
        result = delta_gv(data, split)
        assert chern_forms(omega, data.dim, 1)[1] == result.delta_c1
        assert delta_cJ(omega, {1: 1}, data.dim) == result.delta_c1
        assert ce_d(result.delta_h1, data) == result.delta_c1

    def test_connection_needs_structure_constants(self, f4):
        data, _ = f4
        with pytest.raises(BackendMismatchError):
            pittie_connection(data)

    @pytest.mark.parametrize("name", ["sl3", "so3", "su1", "sp0"])
    def test_connection_is_the_adjoint_action_on_k_P(self, name: str, request: pytest.FixtureRequest):
        data, _ = request.getfixturevalue(name)
        theta = pittie_connection(data)
        v = data.subspace("v").indices
        for x in data.subspace("k_P").vectors:
            for j, y in enumerate(v):
                image = data.bracket_vectors(x, {y: Fraction(1)})
                for i, k in enumerate(v):
                    value = contract(theta[i][j], x).terms.get((), Fraction(0))
                    assert value == image.get(k, Fraction(0))


class TestChernForms:
    @pytest.mark.parametrize("name", ["so3", "su1"])
    def test_second_chern_form(self, name: str, request: pytest.FixtureRequest):
        data, _ = request.getfixturevalue(name)
        omega = curvature(pittie_connection(data), data)
        tr = trace(omega, data.dim, 2)
        tr_square = trace(matrix_product(omega, omega, data.dim), data.dim, 4)
        expected = ((tr ^ tr) - tr_square).scale(Fraction(1, 2)).scale(TWO_PI ** -2)
        assert delta_cJ(omega, {2: 1}, data.dim) == expected
        assert chern_forms(omega, data.dim, 2)[2] == expected

    @pytest.mark.parametrize(
        "name, exponents",
        [
            ("sl2", {1: 2}),
            ("sl3", {1: 3}),
            ("sl3", {1: 1, 2: 1}),
            ("so3", {2: 2}),
            ("su1", {1: 4}),
            ("su1", {1: 2, 2: 1}),
        ],
    )
    def test_vanishes_above_twice_the_codimension(
        self, name: str, exponents: dict[int, int], request: pytest.FixtureRequest
    ):
        data, split = request.getfixturevalue(name)
        assert sum(2 * k * e for k, e in exponents.items()) > 2 * split.q
        omega = curvature(pittie_connection(data), data)
        assert delta_cJ(omega, exponents, data.dim).is_zero

    def test_top_degree_survives(self, so3):
        data, split = so3
        omega = curvature(pittie_connection(data), data)
        assert not delta_cJ(omega, {1: split.q}, data.dim).is_zero


@pytest.mark.parametrize(
    "spec, normalized",
    [
        (FamilySpec(Family.SL_PROJ, 2), ExactScalar.of(-54)),
        (FamilySpec(Family.SO_CONF, 3), ExactScalar.of(-486)),
        (FamilySpec(Family.SU_CR, 0), ExactScalar.of(-2)),
        (FamilySpec(Family.SU_CR, 1), ExactScalar.of(-192)),
        (FamilySpec(Family.SP, 0), ExactScalar.of(-81)),
    ],
)
def test_normalized_coefficients(spec: FamilySpec, normalized: ExactScalar):
    data, split = build_family(spec)
    assert delta_gv(data, split).normalized_coefficient == normalized


@pytest.mark.parametrize(
    "spec",
    [
        *(FamilySpec(Family.SL_PROJ, q) for q in (1, 2, 3)),
        *(FamilySpec(Family.SO_CONF, n) for n in (1, 2, 3, 4)),
        *(FamilySpec(Family.SU_CR, n) for n in (0, 1, 2)),
        FamilySpec(Family.SP, 0),
        FamilySpec(Family.F4),
    ],
    ids=str,
)
def test_coefficient_matches_closed_form(spec: FamilySpec):
    data, split = build_family(spec)
    assert delta_gv(data, split).gv_coefficient == formulas.gv_coefficient(spec)


def test_sp_reference_form_uses_the_weighted_two_form(sp0):
    data, split = sp0
    result = delta_gv(data, split)
    assert result.reference_label.endswith("ζ^3")
    assert result.delta_gv.ratio_to(result.reference) == result.gv_coefficient
