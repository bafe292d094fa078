import json
from fractions import Fraction
from pathlib import Path

import pytest

from app import cli
from app.core import formulas
from app.core.exact_scalar import ONE, ExactScalar
from app.core.lie_core import ValidationFailure
from app.core.utils.error import (
    CurvatureConsistencyError,
    ParameterOutOfRangeError,
    ScalarError,
    ValidationFailedError,
)
from app.dtos.results import CharacteristicResponse, ScalarResponse
from app.services import characteristic
from app.services.utils.error import AxiomViolationError, VerificationMismatchError
from app.utils.error import ConfigError
from test.utils.utils import run_cli

SMALL_CONFIG = "\n".join(
    [
        "GV_N_MAX_SL=1",
        "GV_N_MAX_SO=2",
        "GV_N_MAX_SU=0",
        "GV_N_MAX_SP=0",
        "GV_WO_Q_MAX=1",
    ]
)


@pytest.fixture
def small_config(tmp_path: Path) -> Path:
    path = tmp_path / "gv.env"
    path.write_text(SMALL_CONFIG + "\n")
    return path


class TestOutput:
    def test_gv_json_is_canonical(self, capsys):
        result = run_cli(capsys, "gv", "--family", "sl", "--q", "2", "--json")
        assert result.code == 0
        payload = json.loads(result.out)
        coefficient = ScalarResponse.model_validate(payload["gv_coefficient"])
        assert coefficient.to_scalar() == ExactScalar.of(Fraction(-27, 4), pi=-3)
        assert coefficient.canonical == "-2^-2*3^3*pi^-3"
        assert payload["c_G"] is None

    def test_gv_json_round_trips_through_the_schema(self, capsys):
        result = run_cli(capsys, "gv", "--family", "so", "--n", "3", "--json")
        response = CharacteristicResponse.model_validate_json(result.out)
        assert response.r_G is not None
        assert response.r_G.to_scalar() == ExactScalar.of(81)

    def test_r_G_for_the_three_sphere(self, capsys):
        result = run_cli(capsys, "rg", "--family", "so", "--n", "3", "--format", "json")
        payload = json.loads(result.out)
        assert ExactScalar.parse(payload["r_G"]["canonical"]) == ExactScalar.of(81)
        assert payload["compact_dual"] == "RP^4"

    def test_decimal_annotation(self, capsys):
        result = run_cli(capsys, "cg", "--family", "so", "--n", "1", "--json", "--digits", "4")
        payload = json.loads(result.out)
        assert payload["c_G"]["decimal"] == "-0.0796"

    def test_identical_requests_give_identical_output(self, capsys):
        first = run_cli(capsys, "vey", "--q", "3")
        second = run_cli(capsys, "vey", "--q", "3")
        assert first.code == second.code == 0
        assert first.out == second.out
        assert "h1c1^3" in first.out

    def test_csv(self, capsys):
        result = run_cli(capsys, "wo-cohomology", "--q", "2", "--format", "csv")
        lines = result.out.splitlines()
        assert lines[0] == "key,value"
        assert "q,2" in lines
        assert "betti.0,1" in lines

    def test_roots_of_f4(self, capsys):
        payload = json.loads(run_cli(capsys, "roots", "--family", "f4", "--json").out)
        assert len(payload["roots"]) == 24
        assert payload["psi_sum"] == ["0", "0", "0", "11"]

    def test_dump_algebra(self, capsys):
        result = run_cli(capsys, "dump-algebra", "--family", "sl", "--q", "1", "--json")
        payload = json.loads(result.out)
        assert result.code == 0
        assert payload["labels"] == ["H_1", "E_12", "E_21"]
        assert payload["validation"] == []

    def test_vanishing_certificate(self, capsys):
        payload = json.loads(run_cli(capsys, "vanish", "--q", "2", "--json").out)
        assert payload["base_sign"] == -1
        assert payload["gv_invariant"] is True

    def test_text_rendering(self, capsys):
        result = run_cli(capsys, "gv", "--family", "f4")
        assert result.code == 0
        assert "Δ(GV)" in result.out


class TestExitCodes:
    @pytest.mark.parametrize(
        "args",
        [
            ["gv", "--family", "so", "--q", "2"],
            ["gv", "--family", "sl", "--n", "2"],
            ["gv", "--family", "f4", "--n", "1"],
            ["gv", "--family", "so", "--n", "0"],
            ["cg", "--family", "sl", "--q", "2"],
            ["rg", "--family", "so", "--n", "2"],
            ["rg", "--family", "so", "--n", "1"],
            ["cg", "--family", "so", "--n", "1", "--digits", "0"],
            ["vanish", "--q", "3"],
        ],
    )
    def test_usage_errors(self, capsys, args: list[str]):
        result = run_cli(capsys, *args)
        assert result.code == 2
        assert "Failed" in result.err
        assert result.out == ""

    def test_unknown_flags_are_rejected(self, capsys):
        with pytest.raises(SystemExit) as e:
            cli.run(["gv", "--family", "sl", "--q", "1", "--colour"])
        assert e.value.code == 2

    def test_budget_from_config_file(self, capsys, small_config: Path):
        result = run_cli(capsys, "--config", str(small_config), "cg", "--family", "so", "--n", "3")
        assert result.code == 2
        assert "n_max=2" in result.err

    def test_missing_config_file(self, capsys, tmp_path: Path):
        result = run_cli(capsys, "--config", str(tmp_path / "absent.env"), "vey", "--q", "1")
        assert result.code == 2
        assert "Invalid configuration" in result.err

    def test_unknown_log_level(self, capsys):
        assert run_cli(capsys, "--log-level", "chatty", "vey", "--q", "1").code == 2

    def test_internal_consistency_failure(self, capsys, monkeypatch: pytest.MonkeyPatch):
        def broken(*_):
            raise CurvatureConsistencyError("SL_PROJ(q=1): entry (0, 0)")

        monkeypatch.setattr(cli, "execute", broken)
        result = run_cli(capsys, "gv", "--family", "sl", "--q", "1")
        assert result.code == 3
        assert "Curvature" in result.err

    @pytest.mark.parametrize(
        "error, code",
        [
            (ConfigError("unknown log level 'chatty'"), 2),
            (ParameterOutOfRangeError("n = 0"), 2),
            (ScalarError("digits must be at least 1, got 0"), 3),
            (ValidationFailedError("F4: coroot at (4, 19)"), 3),
            (VerificationMismatchError(1, 40), 1),
            (AxiomViolationError("SL_PROJ(q=1)", ["jacobi"]), 1),
        ],
        ids=lambda value: type(value).__name__ if isinstance(value, Exception) else str(value),
    )
    def test_exit_code_comes_from_the_error(self, error: Exception, code: int):
        assert cli.exit_code_for(error) == code

    def test_axiom_violation_exits_with_one(self, capsys, monkeypatch: pytest.MonkeyPatch):
        failure = ValidationFailure("jacobi", (0, 1, 2), "[[H_1,E_12],E_21] + cyclic = {0: 1}")
        monkeypatch.setattr(characteristic, "validate_lie", lambda data: [failure])
        result = run_cli(capsys, "dump-algebra", "--family", "sl", "--q", "1", "--json")
        assert result.code == 1
        assert json.loads(result.out)["validation"]


class TestVerifyTables:
    def test_pristine_tables_verify(self, capsys, small_config: Path):
        result = run_cli(capsys, "--config", str(small_config), "verify-tables", "--format", "csv")
        assert result.code == 0
        lines = result.out.splitlines()
        assert lines[0] == "check,subject,expected,computed,ok"
        assert all(line.endswith(",True") for line in lines[1:])

    def test_mismatch_exits_with_one(self, capsys, small_config: Path, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setattr(formulas, "c_G", lambda spec: ONE)
        result = run_cli(capsys, "--config", str(small_config), "verify-tables", "--json")
        assert result.code == 1
        assert json.loads(result.out)["failed"] > 0
