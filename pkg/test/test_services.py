import pytest

from app.core.exact_scalar import ONE, ZERO, ExactScalar
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import BudgetExceededError
from app.services.characteristic import CharacteristicService, get_characteristic_service
from app.services.utils.error import VerificationMismatchError
from app.services.verification import VerificationRow, VerificationService
from app.utils.settings import Settings


@pytest.fixture(scope="module")
def small_settings() -> Settings:
    return Settings(
        _env_file=None,  # type: ignore[call-arg]
        n_max_sl=2,
        n_max_so=3,
        n_max_su=1,
        n_max_sp=0,
        wo_q_max=2,
    )


class TestCharacteristicService:
    def test_characteristic_carries_both_constants(self, settings: Settings):
        result = CharacteristicService(settings).characteristic(FamilySpec(Family.SO_CONF, 3))
        assert result.r_G == ExactScalar.of(81)
        assert result.c_G is not None
        assert set(result.extras) == {"split_coefficient", "base_coefficient", "fiber_norm", "sphere_volume"}

    def test_even_conformal_sphere_notes_missing_r_G(self, settings: Settings):
        result = CharacteristicService(settings).characteristic(FamilySpec(Family.SO_CONF, 2))
        assert result.c_G is not None
        assert result.r_G is None
        assert any("Euler" in note for note in result.notes)

    def test_codimension_one_circle_notes_missing_r_G(self, settings: Settings):
        result = CharacteristicService(settings).characteristic(FamilySpec(Family.SO_CONF, 1))
        assert result.c_G is not None
        assert result.r_G is None
        assert any("q > 1" in note for note in result.notes)

    def test_projective_family_has_no_constants(self, settings: Settings):
        result = CharacteristicService(settings).characteristic(FamilySpec(Family.SL_PROJ, 1))
        assert result.c_G is None
        assert result.normalized_coefficient == ExactScalar.of(-4)

    def test_budgets_are_enforced(self, small_settings: Settings):
        service = CharacteristicService(small_settings)
        with pytest.raises(BudgetExceededError):
            service.characteristic(FamilySpec(Family.SO_CONF, 4))
        with pytest.raises(BudgetExceededError):
            service.vey(3)

    def test_singleton(self):
        assert get_characteristic_service() is get_characteristic_service()


class TestVerificationService:
    def test_all_rows_match(self, small_settings: Settings):
        service = VerificationService(small_settings)
        rows = service.run()
        assert rows
        assert [row for row in rows if not row.ok] == []
        assert service.check(rows) is None

    def test_rows_cover_every_family(self, small_settings: Settings):
        subjects = {row.subject for row in VerificationService(small_settings).run()}
        assert "F4" in subjects
        assert "SO_CONF(n=3)" in subjects
        assert "WO_2" in subjects

    def test_mismatch_is_reported(self, small_settings: Settings):
        rows = [
            VerificationRow("c_G", "SO_CONF(n=1)", ONE, ONE),
            VerificationRow("c_G", "SO_CONF(n=2)", ONE, ZERO),
        ]
        error = VerificationService(small_settings).check(rows)
        assert isinstance(error, VerificationMismatchError)
        assert (error.failed, error.total) == (1, 2)
