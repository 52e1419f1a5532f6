"""Logging setup for command-line runs."""

from __future__ import annotations

import logging
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
HANDLER_NAME = "hms-confidence-stderr"

_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def level_for(verbosity: int) -> int:
    """``0`` -> WARNING, ``1`` -> INFO, ``2`` or more -> DEBUG."""

    return _LEVELS.get(max(verbosity, 0), logging.DEBUG)


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Send ``src.app`` logs to the current ``sys.stderr`` at the level chosen by ``verbosity``.

    Calling it again replaces the handler instead of stacking a second one.
    """

    logger = logging.getLogger("src.app")
    for handler in list(logger.handlers):
        if handler.get_name() == HANDLER_NAME:
            logger.removeHandler(handler)
            handler.close()

    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level_for(verbosity))
    return logger


__all__ = ["LOG_FORMAT", "HANDLER_NAME", "configure_logging", "level_for"]
