"""Finite-category Ramsey laboratory."""

__version__ = "0.1.0"
