#!/usr/bin/env python3
"""
nonloc - Single-run launcher

Runs the nonloc CLI from a source checkout without installing anything.

Usage:
    python run.py [command] [options]

Examples:
    python run.py check builtin:ks --property NS
    python run.py classify builtin:ghz
    python run.py quantum builtin:hardy --probs
    python run.py hierarchy
"""

import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).parent.absolute()
sys.path.insert(0, str(project_root))

# Check for critical dependencies
try:
    import numpy
    import pydantic
    import rich
    import scipy
    import typer
    import yaml
except ImportError as e:
    print(f"Error: Missing required dependency - {e.name}")
    print("Please install all dependencies with: pip install -r requirements.txt")
    sys.exit(1)

# Run the CLI application
if __name__ == "__main__":
    from cli.main import app
    app()
