"""Explicit Neron-Tate height bound toolkit for curves in powers of elliptic curves."""

__version__ = "0.1.0"
