"""Command-line interface."""

from .commands import COMMANDS, UsageError
from .config import load_config, resolve_options
from .main import build_parser, main

__all__ = ["COMMANDS", "UsageError", "load_config", "resolve_options", "build_parser", "main"]
