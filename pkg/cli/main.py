import logging

import typer
from rich.panel import Panel
from rich.table import Table

from agents.quantum.systems import QUANTUM_BUILTINS
from cli.commands import check_commands, classify_commands, hierarchy_commands, quantum_commands, realize_commands
from cli.common import console
from config import load_settings, setup_logging
from models.catalog import BUILTINS

__version__ = "0.1.0"

logger = logging.getLogger("nonloc")

# Create Typer app
app = typer.Typer(
    name="nonloc",
    help="Relational hidden-variable models: properties, constructions and no-go deciders",
    add_completion=False,
)

app.command("check")(check_commands.check)
app.command("classify")(classify_commands.classify)
app.command("realize")(realize_commands.realize)
app.command("quantum")(quantum_commands.quantum)
app.command("hierarchy")(hierarchy_commands.hierarchy)


@app.callback()
def callback(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
):
    """Relational hidden-variable models: properties, constructions and no-go deciders."""
    setup_logging(verbose)
    ctx.obj = {"settings": load_settings()}
    logger.debug("Settings: %s", ctx.obj["settings"])


@app.command("version")
def version():
    """Show the version of the application."""
    console.print(f"[bold blue]nonloc[/bold blue] [yellow]v{__version__}[/yellow]")


@app.command("builtins")
def builtins():
    """List the builtin:<name> models and quantum systems."""
    table = Table(title="Builtins")
    table.add_column("Name", style="cyan")
    table.add_column("Kind")
    for name in BUILTINS:
        table.add_row(f"builtin:{name}", "model")
    for name in QUANTUM_BUILTINS:
        table.add_row(f"builtin:{name}", "quantum system")
    console.print(Panel.fit(table, border_style="blue"))


def main():
    """Entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
