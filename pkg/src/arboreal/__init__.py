"""Exact arithmetic and finite-group checks for arboreal Galois groups of unicritical maps."""

__version__ = "0.1.0"
