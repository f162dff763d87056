"""Helpers shared by the command modules: model loading, output and exit codes."""

import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

import typer
from rich.console import Console

from agents.quantum.systems import QUANTUM_BUILTINS
from models.catalog import BUILTINS
from models.errors import NonlocError
from models.quantum_runner import QuantumRealization
from models.serialization import AnyModel, dumps, load_model, load_quantum

logger = logging.getLogger("nonloc")

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2

BUILTIN_PREFIX = "builtin:"

console = Console()


def settings(ctx: typer.Context) -> Dict[str, Any]:
    return (ctx.obj or {}).get("settings", {})


def output_format(ctx: typer.Context, requested: Optional[str]) -> str:
    fmt = requested or settings(ctx).get("cli", {}).get("default_output_format", "text")
    if fmt not in ("text", "machine"):
        console.print(f"[red]Error:[/red] unknown format {fmt!r} (expected text or machine)")
        raise typer.Exit(EXIT_USAGE)
    return fmt


def _builtin_name(source: str) -> Optional[str]:
    return source[len(BUILTIN_PREFIX):] if source.startswith(BUILTIN_PREFIX) else None


def open_model(source: str) -> AnyModel:
    """A catalog model for ``builtin:<name>``, otherwise the model file at ``source``."""
    name = _builtin_name(source)
    try:
        if name is not None:
            if name not in BUILTINS:
                raise NonlocError(f"unknown builtin {name!r}; available: {', '.join(sorted(BUILTINS))}")
            return BUILTINS[name]()
        return load_model(source)
    except NonlocError as e:
        console.print(f"[red]Error:[/red] {e}")
        logger.debug("Could not load %s", source, exc_info=True)
        raise typer.Exit(EXIT_USAGE)


def open_quantum(source: str) -> QuantumRealization:
    name = _builtin_name(source)
    try:
        if name is not None:
            if name not in QUANTUM_BUILTINS:
                raise NonlocError(f"unknown quantum builtin {name!r}; available: {', '.join(sorted(QUANTUM_BUILTINS))}")
            return QUANTUM_BUILTINS[name]()
        return load_quantum(source)
    except NonlocError as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)


def emit_machine(report: Dict[str, Any]) -> None:
    typer.echo(dumps(report), nl=False)


class Timings:
    """Wall-clock stage timings, only reported when asked for."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = round(time.perf_counter() - start, 6)

    def attach(self, report: Dict[str, Any]) -> Dict[str, Any]:
        if self.enabled:
            report["timings"] = dict(self.stages)
        return report
