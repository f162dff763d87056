import logging
from typing import List, Optional

import typer
from rich.table import Table

from agents.properties import PropertiesAgent
from agents.properties.agent import property_family
from cli.common import EXIT_FAILS, EXIT_OK, EXIT_USAGE, Timings, console, emit_machine, open_model, output_format, settings
from models.errors import NonlocError

logger = logging.getLogger("nonloc.check")


def check(
    ctx: typer.Context,
    model: str = typer.Argument(..., help="Model file or builtin:<name>"),
    properties: Optional[List[str]] = typer.Option(None, "--property", "-p", help="Property to check (repeatable)"),
    check_all: bool = typer.Option(False, "--all", "-a", help="Check every property of the model's kind"),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: text or machine"),
    timings: bool = typer.Option(False, "--timings", help="Include wall-clock timings"),
):
    """Check relational or probabilistic properties of a model."""
    fmt = output_format(ctx, fmt)
    if not properties and not check_all:
        console.print("[red]Error:[/red] give at least one --property or --all")
        raise typer.Exit(EXIT_USAGE)

    subject = open_model(model)
    agent = PropertiesAgent(settings(ctx))
    clock = Timings(timings)
    try:
        family = property_family(subject)
        names = [p.value for p in family] if check_all else [name.upper() for name in properties]
        with clock.stage("check"):
            results = agent.check_all(subject, names)
    except NonlocError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)

    holds = all(result.holds for _, result in results)
    report = clock.attach(
        {
            "command": "check",
            "inputs": {"model": model, "properties": names},
            "verdicts": {name: result.holds for name, result in results},
            "violations": {name: result.violation.to_dict() for name, result in results if result.violation},
            "holds": holds,
        }
    )

    if fmt == "machine":
        emit_machine(report)
    else:
        table = Table(title=f"Properties of {model}")
        table.add_column("Property", style="cyan")
        table.add_column("Verdict")
        table.add_column("Witness", style="dim")
        for name, result in results:
            verdict = "[green]holds[/green]" if result.holds else "[red]fails[/red]"
            witness = str(result.violation.to_dict()["witness"]) if result.violation else ""
            table.add_row(name, verdict, witness)
        console.print(table)
        if timings:
            console.print(f"Timings: {report['timings']}")

    logger.debug("check %s: %s", model, report["verdicts"])
    raise typer.Exit(EXIT_OK if holds else EXIT_FAILS)
