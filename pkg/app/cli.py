import argparse
from collections.abc import Sequence
from pathlib import Path
from typing import NamedTuple

from pydantic import BaseModel

from app import ui
from app.core.families import build_family
from app.core.lie_core import Family, FamilySpec
from app.core.utils.error import CoreError, PreconditionError, UsageError
from app.dtos.results import (
    AlgebraDumpResponse,
    CharacteristicResponse,
    ConstantResponse,
    ProportionalityResponse,
    RootTableResponse,
    VanishingResponse,
    VerificationResponse,
    VeyBasisResponse,
    WOCohomologyResponse,
)
from app.services.characteristic import CharacteristicService
from app.services.utils.error import AxiomViolationError, ServiceError
from app.services.verification import VerificationService
from app.utils.error import ConfigError
from app.utils.logger import configure_logging, logger
from app.utils.settings import Settings, load_settings

_logger = logger.getChild("cli")

FAMILIES = {
    "sl": Family.SL_PROJ,
    "so": Family.SO_CONF,
    "su": Family.SU_CR,
    "sp": Family.SP,
    "f4": Family.F4,
}
FAMILY_COMMANDS = ("gv", "cg", "rg", "roots", "dump-algebra")
Q_COMMANDS = ("vey", "wo-cohomology", "vanish")
OUTPUT_FORMATS = ("text", "json", "csv")

EXIT_OK = 0


class CommandRequest(NamedTuple):
    command: str
    spec: FamilySpec | None
    q: int | None
    output_format: str
    digits: int | None
    config_path: Path | None
    log_level: str | None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gv-classes",
        description="Exact Godbillon-Vey classes and proportionality constants of parabolic geometries.",
    )
    parser.add_argument("--config", type=Path, help="key=value settings file (default: .env)")
    parser.add_argument("--log-level", help="logging level for stderr diagnostics")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=OUTPUT_FORMATS, default="text", dest="output_format")
    output.add_argument("--json", action="store_const", const="json", dest="output_format")
    output.add_argument("--digits", type=int, help="decimal places for numeric annotations")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", choices=sorted(FAMILIES), required=True)
    family.add_argument("--n", type=int, help="family parameter (so, su, sp)")
    family.add_argument("--q", type=int, help="codimension (sl)")

    codimension = argparse.ArgumentParser(add_help=False)
    codimension.add_argument("--q", type=int, required=True, help="codimension of the foliation")

    commands = parser.add_subparsers(dest="command", required=True)
    helps = {
        "gv": "Δ(GV) and its coefficient against the reference top form",
        "cg": "the fiber-integration constant c_G",
        "rg": "the Euler-characteristic constant r_G",
        "roots": "root table of the parabolic",
        "dump-algebra": "basis, brackets, subspaces and validation report",
        "vey": "Vey basis of H(WO_q)",
        "wo-cohomology": "Betti numbers of WO_q by rank computation",
        "vanish": "antipodal certificate for even q in the projective family",
        "verify-tables": "recompute every tabulated constant against its closed form",
    }
    for name in FAMILY_COMMANDS:
        commands.add_parser(name, parents=[family, output], help=helps[name])
    for name in Q_COMMANDS:
        commands.add_parser(name, parents=[codimension, output], help=helps[name])
    commands.add_parser("verify-tables", parents=[output], help=helps["verify-tables"])
    return parser


def family_spec(name: str, n: int | None, q: int | None) -> FamilySpec:
    """Match the parameter flag to the family's arity."""

    family = FAMILIES[name]
    if family is Family.F4:
        if n is not None or q is not None:
            raise UsageError("f4 takes no parameter")
        return FamilySpec(family)
    if family is Family.SL_PROJ:
        if n is not None or q is None:
            raise UsageError("sl takes --q")
        return FamilySpec(family, q)
    if q is not None or n is None:
        raise UsageError(f"{name} takes --n")
    return FamilySpec(family, n)


def parse_args(argv: Sequence[str] | None = None) -> CommandRequest:
    args = build_parser().parse_args(argv)
    spec = None
    q = None
    if args.command in FAMILY_COMMANDS:
        spec = family_spec(args.family, args.n, args.q)
    elif args.command in Q_COMMANDS:
        q = args.q
    if args.digits is not None and args.digits < 1:
        raise UsageError("--digits must be at least 1")
    return CommandRequest(
        command=args.command,
        spec=spec,
        q=q,
        output_format=args.output_format,
        digits=args.digits,
        config_path=args.config,
        log_level=args.log_level,
    )


def execute(request: CommandRequest, settings: Settings) -> tuple[BaseModel, ServiceError | None]:
    """Run a request; returns the response and the check it failed, if any."""

    service = CharacteristicService(settings)
    digits = request.digits
    spec = request.spec
    match request.command:
        case "gv":
            assert spec is not None
            result = service.characteristic(spec)
            data, _ = build_family(spec)
            return CharacteristicResponse.from_result(result, data.labels, digits), None
        case "cg":
            assert spec is not None
            return ConstantResponse.from_integral(service.c_g(spec), digits), None
        case "rg":
            assert spec is not None
            return ProportionalityResponse.from_result(service.r_g(spec), digits), None
        case "roots":
            assert spec is not None
            return RootTableResponse.from_roots(service.roots(spec)), None
        case "dump-algebra":
            assert spec is not None
            data, failures = service.algebra(spec)
            problem = AxiomViolationError(str(spec), [f.axiom for f in failures]) if failures else None
            return AlgebraDumpResponse.from_algebra(data, failures), problem
        case "vey":
            assert request.q is not None
            basis, dimensions = service.vey(request.q)
            return VeyBasisResponse.from_basis(request.q, basis, dimensions), None
        case "wo-cohomology":
            assert request.q is not None
            return WOCohomologyResponse(q=request.q, betti=service.wo_cohomology(request.q)), None
        case "vanish":
            assert request.q is not None
            certificate = service.vanishing(request.q)
            data, _ = build_family(FamilySpec(Family.SL_PROJ, request.q))
            return VanishingResponse.from_certificate(certificate, data.labels, digits), None
        case "verify-tables":
            verification = VerificationService(settings)
            rows = verification.run()
            return VerificationResponse.from_rows(rows), verification.check(rows)
        case _:
            raise PreconditionError(f"unknown command {request.command!r}")


def exit_code_for(error: CoreError | ConfigError | ServiceError) -> int:
    return error.exit_code


def run(argv: Sequence[str] | None = None) -> int:
    try:
        request = parse_args(argv)
        settings = load_settings(request.config_path)
        configure_logging(request.log_level or settings.log_level)
        digits = request.digits if request.digits is not None else settings.decimal_digits
        response, problem = execute(request._replace(digits=digits), settings)
    except (CoreError, ConfigError) as e:
        ui.print_error(e)
        return exit_code_for(e)
    ui.render(response, request.output_format)
    if problem is not None:
        _logger.warning(str(problem), extra={"command": request.command})
        return exit_code_for(problem)
    return EXIT_OK
