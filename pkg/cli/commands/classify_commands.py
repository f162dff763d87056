import logging
from typing import Optional

import typer
from rich.panel import Panel
from rich.table import Table

from agents.deciders import DecidersAgent
from cli.common import EXIT_OK, EXIT_USAGE, Timings, console, emit_machine, open_model, output_format, settings
from models.relational import EmpiricalModel

logger = logging.getLogger("nonloc.classify")


def _mark(value) -> str:
    if value is True:
        return "[green]✓[/green]"
    if value is False:
        return "[red]✗[/red]"
    return f"[yellow]{value}[/yellow]"


def classify(
    ctx: typer.Context,
    model: str = typer.Argument(..., help="Empirical model file or builtin:<name>"),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: text or machine"),
    timings: bool = typer.Option(False, "--timings", help="Include wall-clock timings"),
):
    """Place an empirical model in the hierarchy LHV ⊂ QM ⊂ NS^p ⊂ NS ⊂ EM."""
    fmt = output_format(ctx, fmt)
    subject = open_model(model)
    if not isinstance(subject, EmpiricalModel):
        console.print("[red]Error:[/red] classify takes an empirical model")
        raise typer.Exit(EXIT_USAGE)

    agent = DecidersAgent(settings(ctx))
    clock = Timings(timings)
    with clock.stage("classify"):
        result = agent.classify(subject)

    details = result.to_dict(subject)
    report = clock.attach(
        {
            "command": "classify",
            "inputs": {"model": model},
            "verdicts": details["classes"],
            "non_total": details["non_total"],
            "witnesses": {"lhv": details["lhv"], "nsp": details["nsp"]},
            "hardy_violations": details["hardy_violations"],
        }
    )

    if fmt == "machine":
        emit_machine(report)
        raise typer.Exit(EXIT_OK)

    table = Table(title=f"Classification of {model}")
    table.add_column("Class", style="cyan")
    table.add_column("Member")
    for name, value in details["classes"].items():
        table.add_row(name, _mark(value))
    console.print(table)

    lhv = details["lhv"]
    if lhv["member"]:
        console.print(f"LHV witness: {len(lhv['witness'])} instruction(s)")
    elif lhv["refuter"]:
        console.print(f"LHV refuter: {lhv['refuter']['m']} -> {lhv['refuter']['o']}")
    if details["non_total"]:
        console.print("[dim]LHV decided on dom(e): the model is not total[/dim]")
    if details["nsp"]["certificate"]:
        equations = details["nsp"]["certificate"]["equations"]
        console.print(Panel.fit(f"{len(equations)} equation(s) admit no strictly positive solution",
                                title="NS^p certificate", border_style="red"))
    if details["hardy_violations"] is not None:
        console.print(f"Hardy variants violated: {len(details['hardy_violations'])}")
    if timings:
        console.print(f"Timings: {report['timings']}")
    raise typer.Exit(EXIT_OK)
