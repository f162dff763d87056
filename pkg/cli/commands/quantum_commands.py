import logging
from pathlib import Path
from typing import List, Optional, Tuple

import typer
from rich.table import Table

from agents.quantum import QuantumAgent
from cli.common import EXIT_FAILS, EXIT_OK, EXIT_USAGE, console, emit_machine, open_quantum, output_format, settings
from models.errors import NonlocError, ToleranceAmbiguityError, UnvalidatedRealizationError
from models.serialization import serialize_model

logger = logging.getLogger("nonloc.quantum")


def parse_measurements(text: Optional[str]) -> Optional[List[Tuple[str, ...]]]:
    """Rows separated by semicolons, labels by commas: 1,2,2;2,1,2."""
    if not text:
        return None
    return [tuple(label.strip() for label in row.split(",")) for row in text.split(";") if row.strip()]


def quantum(
    ctx: typer.Context,
    system: str = typer.Argument(..., help="Quantum realization file or builtin:<name>"),
    measurements: Optional[str] = typer.Option(None, "--measurements", "-m", help='Rows as "a,b;c,d" (default: all)'),
    probs: bool = typer.Option(False, "--probs", help="Print the outcome probabilities"),
    collapse: Optional[float] = typer.Option(None, "--collapse", help="Emit the relational collapse at this epsilon"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the collapsed model here"),
    fmt: Optional[str] = typer.Option(None, "--format", "-f", help="Output format: text or machine"),
):
    """Evaluate a quantum realization: probability tables or the possibilistic collapse."""
    fmt = output_format(ctx, fmt)
    if probs == (collapse is not None):
        console.print("[red]Error:[/red] give exactly one of --probs or --collapse EPS")
        raise typer.Exit(EXIT_USAGE)

    realization = open_quantum(system)
    agent = QuantumAgent(settings(ctx))
    st = realization.system_type
    rows = parse_measurements(measurements)

    try:
        if collapse is not None:
            collapsed = agent.collapse_quantum(realization, rows, collapse)
        else:
            table = agent.probabilities(realization, rows)
    except ToleranceAmbiguityError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    except UnvalidatedRealizationError as e:
        console.print(f"[red]Invalid realization:[/red] {e}")
        raise typer.Exit(EXIT_FAILS)
    except NonlocError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)

    if collapse is not None:
        logger.debug("Collapsed %s at epsilon=%g to %d cells", system, collapse, len(collapsed))
        text = serialize_model(collapsed)
        if output:
            output.write_text(text, encoding="utf-8")
            console.print(f"[green]Wrote[/green] {output} ({len(collapsed)} possible cells)")
        else:
            typer.echo(text, nl=False)
        raise typer.Exit(EXIT_OK)

    entries = [
        {"m": list(st.decode_measurement(m)), "o": list(st.decode_outcome(o)), "p": p}
        for m, row in sorted(table.items())
        for o, p in sorted(row.items())
    ]
    if fmt == "machine":
        emit_machine({"command": "quantum", "inputs": {"system": system, "measurements": measurements},
                      "probabilities": entries})
    else:
        out = Table(title=f"Outcome probabilities of {system}")
        out.add_column("Measurement", style="cyan")
        out.add_column("Outcome")
        out.add_column("p", justify="right")
        for entry in entries:
            out.add_row("".join(entry["m"]), "".join(entry["o"]), f"{entry['p']:.6f}")
        console.print(out)
    raise typer.Exit(EXIT_OK)
