"""Numerical eigensolvers used to check the closed-form spectra."""

from .config import OracleConfig
from .fd import RadialOperator, SecularRoot, fd_eigenvalues, secular_roots, solve_secular
from .shooting import ShootingLevel, dirac_shoot, dirac_spectrum_shooting

__all__ = [
    "OracleConfig",
    "RadialOperator",
    "SecularRoot",
    "ShootingLevel",
    "dirac_shoot",
    "dirac_spectrum_shooting",
    "fd_eigenvalues",
    "secular_roots",
    "solve_secular",
]
