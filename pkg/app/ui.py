import csv
import io
from typing import Any

from pydantic import BaseModel
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from app.dtos.results import (
    AlgebraDumpResponse,
    CharacteristicResponse,
    ConstantResponse,
    FormResponse,
    ProportionalityResponse,
    RootTableResponse,
    ScalarResponse,
    VanishingResponse,
    VerificationResponse,
    VeyBasisResponse,
    WOCohomologyResponse,
)

VERSION = "0.1.0"
console = Console(highlight=False)
error_console = Console(stderr=True, highlight=False)


def print_header(title: str) -> None:
    console.print(Panel(Text(f"{title} · gv-classes v{VERSION}", style="bold cyan"), border_style="cyan"))


def print_error(e: Exception) -> None:
    error_console.print(
        Panel(
            f"[red bold]Error:[/red bold]\n{escape(str(e))}",
            title="[red]✗[/red] Failed",
            border_style="red",
        )
    )


def scalar_cell(value: ScalarResponse | None) -> str:
    if value is None:
        return "-"
    if value.decimal is None:
        return value.canonical
    return f"{value.canonical}  [dim]≈ {value.decimal}[/dim]"


def form_text(form: FormResponse) -> str:
    if not form.terms:
        return "0"
    terms = " + ".join(f"{t.coefficient}·{'∧'.join(t.basis) or '1'}" for t in form.terms)
    if form.prefactor == "1":
        return escape(terms)
    return escape(f"{form.prefactor} · ({terms})")


def scalar_table(title: str, rows: list[tuple[str, ScalarResponse | None]]) -> Table:
    table = Table(title=title, show_header=True, header_style="bold")
    table.add_column("quantity", style="cyan")
    table.add_column("value")
    for name, value in rows:
        table.add_row(name, scalar_cell(value))
    return table


def render_characteristic(response: CharacteristicResponse) -> None:
    print_header(f"Δ(GV) for {response.family}")
    rows = [
        ("GV coefficient", response.gv_coefficient),
        ("GV coefficient · (2π)^(q+1)", response.gv_normalized),
        ("c_G", response.c_G),
        ("r_G", response.r_G),
    ]
    rows += [(key, value) for key, value in response.extras.items()]
    console.print(scalar_table(f"q = {response.q}", rows))
    console.print(f"[bold]reference form[/bold] {escape(response.reference_form)}")
    console.print(f"[bold]Δ(h₁)[/bold] {form_text(response.delta_h1)}")
    console.print(f"[bold]Δ(c₁)[/bold] {form_text(response.delta_c1)}")
    for note in response.notes:
        console.print(f"[yellow]note[/yellow] {escape(note)}")


def render_constant(response: ConstantResponse) -> None:
    print_header(f"c_G for {response.family}")
    console.print(
        scalar_table(
            f"q = {response.q}",
            [
                ("c_G", response.c_G),
                ("split coefficient", response.split_coefficient),
                ("fiber coefficient", response.fiber_coefficient),
                ("base coefficient", response.base_coefficient),
                ("fiber norm", response.fiber_norm),
                ("vol(S^q)", response.sphere_volume),
            ],
        )
    )


def render_proportionality(response: ProportionalityResponse) -> None:
    print_header(f"r_G for {response.family}")
    console.print(
        scalar_table(
            f"compact dual {response.compact_dual}, χ = {response.euler_number}",
            [("r_G", response.r_G), ("c_G", response.c_G), ("volume", response.volume)],
        )
    )


def render_vey(response: VeyBasisResponse) -> None:
    table = Table(title=f"H(WO_{response.q})", header_style="bold")
    table.add_column("degree", justify="right")
    table.add_column("class", style="cyan")
    table.add_column("kind")
    for item in response.classes:
        table.add_row(str(item.degree), item.label, item.kind)
    console.print(table)
    console.print(betti_line(response.dimensions))


def betti_line(betti: dict[int, int]) -> str:
    return "betti: " + ", ".join(f"{degree}:{value}" for degree, value in sorted(betti.items()))


def render_roots(response: RootTableResponse) -> None:
    table = Table(title=f"positive roots of {response.family} (rank {response.rank})", header_style="bold")
    table.add_column("root")
    table.add_column("levi")
    table.add_column("coroot")
    for root in response.roots:
        table.add_row(
            "(" + ", ".join(root.coordinates) + ")",
            "✓" if root.levi else "",
            "(" + ", ".join(root.coroot) + ")" if root.coroot is not None else "-",
        )
    console.print(table)
    console.print("Σ ψ = (" + ", ".join(response.psi_sum) + ")")


def render_algebra(response: AlgebraDumpResponse) -> None:
    print_header(f"{response.family}: dim {response.dim}, {response.backend} backend")
    table = Table(title="brackets", header_style="bold")
    table.add_column(escape("[x, y]"))
    table.add_column("image")
    for bracket in response.brackets:
        image = " + ".join(f"{c}·{label}" for label, c in bracket.image.items())
        table.add_row(escape(f"[{bracket.left}, {bracket.right}]"), escape(image))
    console.print(table)
    for name, vectors in response.subspaces.items():
        console.print(f"[bold]{name}[/bold] (dim {len(vectors)})")
    if not response.validation:
        console.print("[green]✓[/green] all axioms hold")
    for failure in response.validation:
        console.print(f"[red]✗[/red] {failure.axiom} at {failure.witness}: {escape(failure.detail)}")


def render_vanishing(response: VanishingResponse) -> None:
    print_header(f"antipodal certificate for q = {response.q}")
    console.print(scalar_table("split", [("split coefficient", response.split_coefficient)]))
    console.print(f"[bold]s[/bold] = diag({', '.join(map(str, response.antipodal))})")
    console.print(f"[bold]base factor[/bold] {form_text(response.base_factor)}")
    console.print(f"[bold]s^* base factor[/bold] {form_text(response.pulled_back_base)}")
    console.print(f"base sign {response.base_sign}, fiber sign {response.fiber_sign}")
    mark = "[green]✓[/green]" if response.gv_invariant and response.normalizes_k_P else "[red]✗[/red]"
    console.print(f"{mark} s normalizes k_P: {response.normalizes_k_P}, Δ(GV) invariant: {response.gv_invariant}")


def render_verification(response: VerificationResponse) -> None:
    table = Table(title="verification", header_style="bold")
    table.add_column("check", style="cyan")
    table.add_column("subject")
    table.add_column("expected")
    table.add_column("computed")
    table.add_column("")
    for row in response.rows:
        table.add_row(
            row.check,
            row.subject,
            row.expected,
            row.computed,
            "[green]✓[/green]" if row.ok else "[red]✗[/red]",
        )
    console.print(table)
    if response.failed:
        console.print(f"[red bold]{response.failed} of {len(response.rows)} rows differ[/red bold]")
    else:
        console.print(f"[green bold]✓ all {len(response.rows)} rows match[/green bold]")


def flatten(value: Any, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted key paths to leaf values, in model field order."""

    if isinstance(value, dict):
        rows = []
        for key, item in value.items():
            rows += flatten(item, f"{prefix}.{key}" if prefix else str(key))
        return rows
    if isinstance(value, list):
        rows = []
        for i, item in enumerate(value):
            rows += flatten(item, f"{prefix}[{i}]")
        return rows
    if value is None:
        return [(prefix, "")]
    if isinstance(value, bool):
        return [(prefix, "true" if value else "false")]
    return [(prefix, str(value))]


def to_csv(response: BaseModel) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if isinstance(response, VerificationResponse):
        writer.writerow(["check", "subject", "expected", "computed", "ok"])
        for row in response.rows:
            writer.writerow([row.check, row.subject, row.expected, row.computed, row.ok])
        return buffer.getvalue()
    writer.writerow(["key", "value"])
    writer.writerows(flatten(response.model_dump(mode="json")))
    return buffer.getvalue()


TEXT_RENDERERS = {
    CharacteristicResponse: render_characteristic,
    ConstantResponse: render_constant,
    ProportionalityResponse: render_proportionality,
    VeyBasisResponse: render_vey,
    RootTableResponse: render_roots,
    AlgebraDumpResponse: render_algebra,
    VanishingResponse: render_vanishing,
    VerificationResponse: render_verification,
}


def render(response: BaseModel, output_format: str) -> None:
    if output_format == "json":
        console.file.write(response.model_dump_json(indent=2) + "\n")
        return
    if output_format == "csv":
        console.file.write(to_csv(response))
        return
    if isinstance(response, WOCohomologyResponse):
        console.print(f"H(WO_{response.q})")
        console.print(betti_line(response.betti))
        return
    TEXT_RENDERERS[type(response)](response)  # type: ignore[operator]
