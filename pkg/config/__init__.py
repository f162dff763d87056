import logging
import logging.config
import os
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from rich.console import Console
from rich.logging import RichHandler

CONFIG_DIR = Path(__file__).parent

DEFAULT_SETTINGS: Dict[str, Any] = {
    "constructions": {"max_lambda": 2**20},
    "deciders": {"max_instructions": 2**20},
    "quantum": {
        "eta": 1e-9,
        "epsilon": 1e-6,
        "max_denominator": 10**6,
        "snap_tolerance": 1e-9,
    },
    "probabilistic": {"entropy_tolerance": 1e-9},
    "cli": {"default_output_format": "text"},
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    result = deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


def load_settings(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Read settings.yaml (or $NONLOC_SETTINGS) over the built-in defaults."""
    path = Path(path or os.environ.get("NONLOC_SETTINGS") or CONFIG_DIR / "settings.yaml")
    if not path.exists():
        return deepcopy(DEFAULT_SETTINGS)
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    return _merge(DEFAULT_SETTINGS, data)


def rich_stderr_handler() -> RichHandler:
    return RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=False)


def setup_logging(verbose: bool = False, path: Optional[Union[str, Path]] = None) -> None:
    path = Path(path or CONFIG_DIR / "logging.yaml")
    if path.exists():
        with open(path, "r", encoding="utf-8") as f:
            logging.config.dictConfig(yaml.safe_load(f))
    else:
        logging.basicConfig(
            level=logging.INFO,
            format="%(message)s",
            datefmt="[%X]",
            handlers=[rich_stderr_handler()],
        )
    if verbose:
        for name in ("nonloc", "agent", "models", "agents"):
            logging.getLogger(name).setLevel(logging.DEBUG)
