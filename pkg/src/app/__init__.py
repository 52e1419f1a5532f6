"""Confidence modelling for automated essay scoring."""

__version__ = "0.1.0"

__all__ = ["__version__"]
