"""Aliquot cycles of elliptic curves, Hurwitz class numbers, and family averages."""

from .backends import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
