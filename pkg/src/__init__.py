"""Source package for the hms-confidence toolkit."""

__all__ = []
