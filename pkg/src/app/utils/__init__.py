"""Utility helpers for the application."""

from .log import LOG_FORMAT, configure_logging, level_for

__all__ = ["LOG_FORMAT", "configure_logging", "level_for"]
