import logging
from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from agents.constructions import ConstructionsAgent
from cli.common import EXIT_FAILS, EXIT_OK, EXIT_USAGE, console, open_model, output_format, settings
from models.errors import ModelTypeError, PreconditionError, SizeLimitError
from models.serialization import serialize_verdict

logger = logging.getLogger("nonloc.realize")


def realize(
    ctx: typer.Context,
    model: str = typer.Argument(..., help="Model file or builtin:<name>"),
    method: str = typer.Option("sd", "--method", "-m", help="Construction: sv, sd, wdli or upgrade"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the hidden-variable model here"),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: text or machine"),
):
    """Build a hidden-variable realization and report the properties it passes."""
    fmt = output_format(ctx, fmt)
    subject = open_model(model)
    agent = ConstructionsAgent(settings(ctx))

    try:
        result = agent.realize(subject, method)
    except ModelTypeError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except PreconditionError as e:
        console.print(f"[red]Precondition failed:[/red] {e}")
        if e.violation is not None:
            console.print(f"Violation: {e.violation.to_dict()}")
        raise typer.Exit(EXIT_FAILS)
    except SizeLimitError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_FAILS)

    h = result["model"]
    text = serialize_verdict({"method": result["method"], "properties": result["properties"]}, h)
    if output:
        output.write_text(text, encoding="utf-8")
        console.print(f"[green]Wrote[/green] {output} ({len(h.lambdas)} lambda values)")
    elif fmt == "machine":
        typer.echo(text, nl=False)
    else:
        table = Table(title=f"{result['method']} realization of {model}")
        table.add_column("Property", style="cyan")
        table.add_column("Verdict")
        for name, holds in result["properties"].items():
            table.add_row(name, "[green]holds[/green]" if holds else "[red]fails[/red]")
        console.print(table)
        typer.echo(text, nl=False)

    logger.debug("realize %s with %s: %d lambda values", model, method, len(h.lambdas))
    raise typer.Exit(EXIT_OK)
