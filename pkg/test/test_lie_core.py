from dataclasses import replace
from fractions import Fraction

import pytest

from app.core.lie_core import Family, FamilySpec, entry_covector, killing_form, validate_lie
from app.core.utils.error import (
    KillingMismatchError,
    NotInSpanError,
    ParameterOutOfRangeError,
    UnknownSubspaceError,
)
from app.core.utils.matrices import combine, unit


class TestFamilySpec:
    @pytest.mark.parametrize(
        "family, n",
        [(Family.SL_PROJ, 0), (Family.SO_CONF, 0), (Family.SU_CR, -1), (Family.SP, None)],
    )
    def test_rejects_out_of_range_parameters(self, family: Family, n: int | None):
        with pytest.raises(ParameterOutOfRangeError):
            FamilySpec(family, n)

    def test_f4_takes_no_parameter(self):
        with pytest.raises(ParameterOutOfRangeError):
            FamilySpec(Family.F4, 1)

    @pytest.mark.parametrize(
        "spec, q",
        [
            (FamilySpec(Family.SL_PROJ, 4), 4),
            (FamilySpec(Family.SO_CONF, 5), 5),
            (FamilySpec(Family.SU_CR, 1), 3),
            (FamilySpec(Family.SP, 0), 3),
            (FamilySpec(Family.SP, 2), 11),
            (FamilySpec(Family.F4), 15),
        ],
    )
    def test_codimension(self, spec: FamilySpec, q: int):
        assert spec.q == q


class TestSl2:
    def test_basis_and_brackets(self, sl2):
        data, _ = sl2
        assert data.labels == ("H_1", "E_12", "E_21")
        assert data.bracket(0, 1) == {1: 2}
        assert data.bracket(1, 2) == {0: 1}
        assert data.bracket(2, 1) == {0: -1}
        assert data.bracket(1, 1) == {}

    def test_killing_form_matches_trace_formula(self, sl2):
        data, _ = sl2
        form = killing_form(data)
        assert form[0][0] == 8
        assert form[1][2] == form[2][1] == 4
        assert form[1][1] == 0

    def test_wrong_killing_scale_is_reported(self, sl2):
        data, _ = sl2
        with pytest.raises(KillingMismatchError):
            killing_form(replace(data, killing_scale=Fraction(1)))

    def test_entry_covector(self, sl2):
        data, _ = sl2
        assert entry_covector(data, 1, 1) == {0: 1}
        assert entry_covector(data, 2, 1) == {2: 1}

    def test_coordinates_of_matrices(self, sl2):
        data, _ = sl2
        assert data.coordinates_of(combine((3, unit(1, 2)), (-1, unit(2, 2)), (1, unit(1, 1)))) == {
            0: 1,
            1: 3,
        }
        with pytest.raises(NotInSpanError):
            data.coordinates_of(unit(1, 1))

    def test_perturbed_bracket_breaks_jacobi(self, sl2):
        data, _ = sl2
        broken = data.with_structure_constant(0, 1, 1, Fraction(3))
        failures = validate_lie(broken)
        assert any(f.axiom == "jacobi" for f in failures)
        assert validate_lie(data) == []


@pytest.mark.parametrize("name", ["sl3", "so2", "so3", "su1", "sp0", "f4"])
def test_built_algebras_are_valid(name: str, request: pytest.FixtureRequest):
    data, _ = request.getfixturevalue(name)
    assert validate_lie(data) == []


def test_subspaces_are_looked_up_by_name(su1):
    data, _ = su1
    assert data.subspace("k_P").dim == 1
    with pytest.raises(UnknownSubspaceError):
        data.subspace("k_G")
    with pytest.raises(UnknownSubspaceError):
        data.index("E_99")
