"""Hypergeometrization operator on truncated power series."""

__version__ = "0.1.0"
