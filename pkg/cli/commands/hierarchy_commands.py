import logging
from typing import Optional

import typer
from rich.table import Table

from agents.deciders.hierarchy import run_hierarchy_demo
from cli.common import EXIT_FAILS, EXIT_OK, Timings, console, emit_machine, output_format, settings

logger = logging.getLogger("nonloc.hierarchy")


def hierarchy(
    ctx: typer.Context,
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: text or machine"),
    timings: bool = typer.Option(False, "--timings", help="Include wall-clock timings"),
):
    """Run the catalog witnesses for each strict inclusion of the class hierarchy."""
    fmt = output_format(ctx, fmt)
    clock = Timings(timings)
    with clock.stage("hierarchy"):
        separations = run_hierarchy_demo(config=settings(ctx))
    ok = all(s.ok for s in separations)

    report = clock.attach(
        {
            "command": "hierarchy",
            "chain": "LHV ⊂ QM ⊂ NS^p ⊂ NS ⊂ EM",
            "separations": [s.to_dict() for s in separations],
            "ok": ok,
        }
    )
    if fmt == "machine":
        emit_machine(report)
    else:
        table = Table(title="LHV ⊂ QM ⊂ NS^p ⊂ NS ⊂ EM")
        table.add_column("Witness", style="cyan")
        table.add_column("Inclusion")
        table.add_column("Result")
        for s in separations:
            table.add_row(s.name, s.inclusion, "[green]ok[/green]" if s.ok else f"[red]mismatch[/red] {s.diff()}")
        console.print(table)
        if timings:
            console.print(f"Timings: {report['timings']}")

    if not ok:
        logger.error("Hierarchy demo failed")
    raise typer.Exit(EXIT_OK if ok else EXIT_FAILS)
