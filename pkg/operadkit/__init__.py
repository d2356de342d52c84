"""Exact computational kernel for colored symmetric operads."""

__version__ = "0.1.0"
