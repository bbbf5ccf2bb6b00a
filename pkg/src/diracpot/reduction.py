"""Rotated-spinor reduction of the radial Dirac system.

With pure vector coupling ``V = mu W`` and ``sin(theta) = mu/kappa`` the
rotated components obey a Schroedinger-like equation for the upper
component plus a first-order relation giving the lower one. Everything here
uses the top (positive-energy) sign.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import BasisMismatch, EmptyGrid, ValidityViolation
from .model import DerivedParams, ProblemParams


class Orbital(enum.Enum):
    EXACT = "exact"    # kappa / r
    APPROX = "approx"  # kappa * W(r), W = V / mu


class Basis(enum.Enum):
    ROTATED = "phi"
    ORIGINAL = "psi"


@dataclass(frozen=True)
class PotentialProfile:
    """A vector potential ``V(r)`` with its derivative and orbital function.

    ``v_inf`` is the limit of ``V`` at infinity; ``w_inf`` that of ``W``.
    """

    name: str
    mu: float
    v: Callable[[np.ndarray], np.ndarray]
    v_prime: Callable[[np.ndarray], np.ndarray]
    orbital: Orbital = Orbital.APPROX
    v_inf: float = 0.0
    w_inf: float = 0.0
    length_scale: float = 1.0

    def w(self, r):
        return self.v(r) / self.mu

    def orbital_term(self, r, kappa):
        if self.orbital is Orbital.EXACT:
            return kappa / np.asarray(r, dtype=float)
        return kappa * self.w(r)

    def with_orbital(self, orbital) -> "PotentialProfile":
        return replace(self, orbital=Orbital(orbital))


def hulthen_profile(params: ProblemParams, orbital=Orbital.APPROX) -> PotentialProfile:
    """``V = v0 / (exp(lam r) - 1)``, written in decaying exponentials."""
    v0, lam = params.v0, params.lam

    def v(r):
        r = np.asarray(r, dtype=float)
        return v0 * np.exp(-lam * r) / -np.expm1(-lam * r)

    def v_prime(r):
        r = np.asarray(r, dtype=float)
        return -lam * v0 * np.exp(-lam * r) / np.expm1(-lam * r) ** 2

    return PotentialProfile("hulthen", params.mu, v, v_prime, Orbital(orbital),
                            v_inf=0.0, w_inf=0.0, length_scale=1.0 / lam)


def eckart_profile(params: ProblemParams, orbital=Orbital.APPROX) -> PotentialProfile:
    """``V = v0 coth(lam r)``; ``coth - 1 = 2 / (exp(2 lam r) - 1)`` keeps the tail exact."""
    v0, lam = params.v0, params.lam

    def v(r):
        r = np.asarray(r, dtype=float)
        y = np.exp(-2.0 * lam * r)
        return v0 * (1.0 + 2.0 * y / -np.expm1(-2.0 * lam * r))

    def v_prime(r):
        r = np.asarray(r, dtype=float)
        y = np.exp(-2.0 * lam * r)
        return -4.0 * lam * v0 * y / np.expm1(-2.0 * lam * r) ** 2

    return PotentialProfile("eckart", params.mu, v, v_prime, Orbital(orbital),
                            v_inf=v0, w_inf=lam, length_scale=1.0 / lam)


def coulomb_profile(mu: float, orbital=Orbital.EXACT, length_scale: float = 1.0) -> PotentialProfile:
    """Pure ``V = mu / r`` with ``W = 1/r``."""

    def v(r):
        return mu / np.asarray(r, dtype=float)

    def v_prime(r):
        return -mu / np.asarray(r, dtype=float) ** 2

    return PotentialProfile("coulomb", mu, v, v_prime, Orbital(orbital),
                            v_inf=0.0, w_inf=0.0, length_scale=length_scale)


PROFILES = {"hulthen": hulthen_profile, "eckart": eckart_profile}


def effective_potential(profile: PotentialProfile, derived: DerivedParams, eps, r):
    """``(g/mu) [(g/mu) V^2 - V'] + 2 eps V`` with ``g = kappa C``.

    The radial operator is ``-d^2/dr^2`` plus this, with eigenvalue
    ``eps^2 - m^2``.
    """
    q = derived.gamma / derived.mu
    v = profile.v(r)
    return q * (q * v * v - profile.v_prime(r)) + 2.0 * eps * v


def lower_from_upper(upper, upper_deriv, derived: DerivedParams, params: ProblemParams,
                     eps, profile: PotentialProfile, tol: float = 1e-12):
    """Return ``r -> [phi+' + (g/mu) V phi+ - (mu/kappa) m phi+] / (m C + eps)``."""
    denom = params.mass * derived.cos_theta + eps
    if abs(denom) <= tol * params.mass:
        raise ValidityViolation(f"eps = {eps} sits at -mC; the top-sign relation is singular")
    q = derived.gamma / derived.mu
    shift = derived.sin_theta * params.mass

    def lower(r):
        u = upper(r)
        return (upper_deriv(r) + (q * profile.v(r) - shift) * u) / denom

    return lower


@dataclass
class SpinorPair:
    """Two radial components sampled on a grid ``r`` in a given basis."""

    r: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    basis: Basis = Basis.ROTATED

    def norm_density(self):
        return self.upper**2 + self.lower**2


def _rotate(pair: SpinorPair, derived: DerivedParams, sign: float, basis: Basis) -> SpinorPair:
    c = math.cos(derived.theta / 2.0)
    s = sign * math.sin(derived.theta / 2.0)
    return SpinorPair(pair.r, c * pair.upper - s * pair.lower, s * pair.upper + c * pair.lower, basis)


def rotate_to_original(pair: SpinorPair, derived: DerivedParams) -> SpinorPair:
    """``psi+ = cos(t/2) phi+ - sin(t/2) phi-``, ``psi- = sin(t/2) phi+ + cos(t/2) phi-``."""
    if pair.basis is not Basis.ROTATED:
        raise BasisMismatch("pair is already in the original basis")
    return _rotate(pair, derived, 1.0, Basis.ORIGINAL)


def rotate_to_rotated(pair: SpinorPair, derived: DerivedParams) -> SpinorPair:
    if pair.basis is not Basis.ORIGINAL:
        raise BasisMismatch("pair is already in the rotated basis")
    return _rotate(pair, derived, -1.0, Basis.ROTATED)


_STENCILS = {
    2: (np.array([-0.5, 0.0, 0.5]), 1),
    4: (np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0, 2),
}


def stencil_derivative(y, h, order=4):
    """Central first derivative on a uniform grid; the ``order//2`` edge points are NaN."""
    weights, half = _STENCILS[order]
    y = np.asarray(y, dtype=float)
    out = np.full_like(y, np.nan)
    if y.size < 2 * half + 1:
        return out
    acc = np.zeros(y.size - 2 * half)
    for j, w in enumerate(weights):
        if w:
            acc += w * y[j:y.size - 2 * half + j]
    out[half:y.size - half] = acc / h
    return out


def _uniform_step(r):
    r = np.asarray(r, dtype=float)
    if r.size == 0:
        raise EmptyGrid("grid is empty")
    if r[0] <= 0 or np.any(np.diff(r) <= 0):
        raise ValueError("grid must be strictly increasing with r > 0")
    h = (r[-1] - r[0]) / (r.size - 1) if r.size > 1 else 0.0
    if r.size > 1 and not np.allclose(np.diff(r), h, rtol=1e-9, atol=0):
        raise ValueError("residual stencils need a uniform grid")
    return h


def first_order_residual(pair: SpinorPair, params: ProblemParams, derived: DerivedParams, eps,
                         profile: PotentialProfile, grid=None, order: int = 4) -> float:
    """Max relative residual of the rotated first-order (top-sign) system.

    Each row residual is divided by the sum of the magnitudes of its terms,
    so nodes of either component do not inflate the measure. Derivatives
    are taken with a central stencil of the given order.
    """
    if pair.basis is not Basis.ROTATED:
        raise BasisMismatch("first_order_residual expects the rotated basis")
    r = np.asarray(pair.r if grid is None else grid, dtype=float)
    if r.size == 0:
        raise EmptyGrid("grid is empty")
    h = _uniform_step(r)
    p, m = pair.upper, pair.lower
    dp = stencil_derivative(p, h, order)
    dm = stencil_derivative(m, h, order)
    mass = params.mass
    v = profile.v(r)
    off = derived.gamma / derived.mu * v - derived.sin_theta * mass
    diag1 = mass * derived.cos_theta + 2.0 * v - eps
    diag2 = -mass * derived.cos_theta - eps
    row1 = (diag1 * p, off * m, -dm)
    row2 = (dp, off * p, diag2 * m)
    res = []
    for row in (row1, row2):
        num = np.abs(sum(row))
        den = sum(np.abs(t) for t in row)
        with np.errstate(invalid="ignore", divide="ignore"):
            res.append(num / den)
    out = np.fmax(res[0], res[1])
    out = out[np.isfinite(out)]
    if out.size == 0:
        raise EmptyGrid("grid too short for the stencil")
    return float(np.max(out))


def dirac_residual(pair: SpinorPair, params: ProblemParams, eps, profile: PotentialProfile,
                   order: int = 4) -> float:
    """Same relative measure for the unrotated system in the original basis."""
    if pair.basis is not Basis.ORIGINAL:
        raise BasisMismatch("dirac_residual expects the original basis")
    r = np.asarray(pair.r, dtype=float)
    h = _uniform_step(r)
    up, lo = pair.upper, pair.lower
    dup = stencil_derivative(up, h, order)
    dlo = stencil_derivative(lo, h, order)
    v = profile.v(r)
    orb = profile.orbital_term(r, params.kappa)
    m = params.mass
    row1 = ((m + v - eps) * up, -dlo, orb * lo)
    row2 = (dup, orb * up, (-m + v - eps) * lo)
    res = []
    for row in (row1, row2):
        with np.errstate(invalid="ignore", divide="ignore"):
            res.append(np.abs(sum(row)) / sum(np.abs(t) for t in row))
    out = np.fmax(res[0], res[1])
    out = out[np.isfinite(out)]
    return float(np.max(out))
