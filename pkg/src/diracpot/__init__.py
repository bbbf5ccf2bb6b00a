"""Dirac bound states for 1/r-singular pure vector potentials."""

from .errors import DiracPotError
from .model import Branch, DerivedParams, Level, ProblemParams, derive

__version__ = "0.1.0"

__all__ = ["Branch", "DerivedParams", "DiracPotError", "Level", "ProblemParams", "derive"]
