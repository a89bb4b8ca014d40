"""Exact free-group computations."""

__version__ = "0.1.0"
