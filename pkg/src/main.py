"""Module entry point: ``python -m src.main`` runs the command-line interface."""

from __future__ import annotations

import sys

from src.app.cli.main import main

if __name__ == "__main__":
    sys.exit(main())

__all__ = ["main"]
