"""Closed-form Dirac-Hulthen solution, ``V = v0 / (exp(lam r) - 1)``.

The ansatz ``phi+ = x^alpha (1-x)^beta P(1-2x)`` with ``x = exp(-lam r)``
quantizes through ``(n + alpha + beta)^2 = alpha^2 + gamma^2 - 2 eps v0/lam^2``.
The closed energy formula solves the squared form of that condition, so a
formula value is a bound state only when the unsquared condition
``2 alpha (n + |gamma|) = -2 eps mu / lam - n (n + 2|gamma|)`` holds with a
positive right-hand side. :func:`raw_levels` keeps every formula value with
that flag; :func:`hulthen_spectrum` returns only the physical ones.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IndexBeyondSpectrum, NoBoundLevels
from .model import (Branch, Level, ProblemParams, bound_condition_holds, derive,
                    formula_index_for, is_bound_energy, mapped_levels, spinor_index_for)
from .reduction import Orbital, hulthen_profile
from .specfun import jacobi_p, jacobi_p_deriv
from .wavefunction import SpinorSample, negative_from_mapped, sample_from_upper


def _discriminant(params: ProblemParams, n: int, g: float) -> float:
    ratio = 2.0 * params.mass / params.lam
    u = n * (n + 2.0 * g)
    return ratio * ratio * (u + params.kappa**2) - u * u


def hulthen_epsilon(params: ProblemParams, n: int) -> float:
    """Positive-energy formula value for index ``n``."""
    if n < 0:
        raise IndexBeyondSpectrum(f"n must be nonnegative, got {n}")
    d = derive(params)
    g = d.abs_gamma
    disc = _discriminant(params, n, g)
    if disc < 0:
        raise IndexBeyondSpectrum(f"n = {n} is beyond the spectrum (discriminant {disc:.3e})")
    if n == 0:
        return params.mass * d.cos_theta
    mu = d.mu
    nu = n + g
    u = n * (n + 2.0 * g)
    return 0.5 * params.lam / (mu * mu + nu * nu) * (-mu * u + nu * math.sqrt(disc))


def hulthen_nmax(params: ProblemParams) -> int:
    """Largest ``n`` for which the formula's square root is real."""
    d = derive(params)
    g = d.abs_gamma
    m, lam, kappa = params.mass, params.lam, params.kappa
    inner = 1.0 + math.sqrt(1.0 + (lam * kappa / m) ** 2)
    if g == 0.0:
        big = math.sqrt(2.0 * inner) * m / lam
    else:
        big = g * (-1.0 + math.sqrt(1.0 + 2.0 * (m / (lam * g)) ** 2 * inner))
    n = max(0, int(math.floor(big)))
    # floor() of a value within round-off of an integer can be off by one
    while n > 0 and _discriminant(params, n, g) < 0:
        n -= 1
    while _discriminant(params, n + 1, g) >= 0:
        n += 1
    return n


def alpha_of(params: ProblemParams, eps: float) -> float:
    return math.sqrt(max(0.0, params.mass**2 - eps * eps)) / params.lam


def beta_of(kappa: int, gamma: float) -> float:
    return gamma + 1.0 if kappa > 0 else -gamma


def termination_margin(params: ProblemParams, n: int, eps: float) -> float:
    """``-2 eps mu/lam - n(n+2|gamma|)``; equals ``2 alpha (n+|gamma|)`` at a true level."""
    d = derive(params)
    return -2.0 * eps * d.mu / params.lam - n * (n + 2.0 * d.abs_gamma)


def raw_levels(params: ProblemParams) -> list[Level]:
    """Every formula value ``n = 0..n_max`` with physical/bound flags."""
    d = derive(params)
    out = []
    for n in range(hulthen_nmax(params) + 1):
        eps = hulthen_epsilon(params, n)
        alpha = alpha_of(params, eps)
        margin = termination_margin(params, n, eps)
        spinor = spinor_index_for(n, params.kappa)
        tol = 1e-12 * max(1.0, abs(margin))
        physical = (
            spinor is not None
            and is_bound_energy(eps, params.mass)
            and (margin > tol or (d.boundary and abs(margin) <= tol))
        )
        out.append(Level(n, eps, alpha, spinor, Branch.POSITIVE,
                         physical=physical, bound_check=bound_condition_holds(eps, params)))
    return out


def hulthen_spectrum(params: ProblemParams, branch=Branch.POSITIVE) -> list[Level]:
    """Physical levels ordered by spinor index.

    The negative branch is the positive spectrum of ``params.mapped()`` with
    energies negated.
    """
    branch = Branch.parse(branch)
    if branch is Branch.NEGATIVE:
        return mapped_levels(hulthen_spectrum(params.mapped()), branch)
    levels = [lv for lv in raw_levels(params) if lv.physical and lv.bound_check]
    return sorted(levels, key=lambda lv: lv.spinor_index)


def find_level(params: ProblemParams, spinor_index: int, branch=Branch.POSITIVE) -> Level:
    for lv in hulthen_spectrum(params, branch):
        if lv.spinor_index == spinor_index:
            return lv
    raise NoBoundLevels(f"no {Branch.parse(branch).value} level with spinor index {spinor_index}")


def _upper_parts(params: ProblemParams, level: Level):
    d = derive(params)
    n = level.spinor_index
    if n is None:
        raise NoBoundLevels(f"formula index {level.n} carries no spinor")
    lam = params.lam
    alpha = alpha_of(params, level.epsilon)
    beta = beta_of(params.kappa, d.gamma)
    a, b = 2.0 * alpha, 2.0 * beta - 1.0

    def envelope(r):
        r = np.asarray(r, dtype=float)
        return np.exp(-lam * alpha * r + beta * np.log(-np.expm1(-lam * r)))

    def upper(r):
        r = np.asarray(r, dtype=float)
        return envelope(r) * jacobi_p(n, a, b, 1.0 - 2.0 * np.exp(-lam * r))

    def upper_deriv(r):
        r = np.asarray(r, dtype=float)
        x = np.exp(-lam * r)
        z = 1.0 - 2.0 * x
        env = envelope(r)
        log_slope = -lam * (alpha - beta * x / -np.expm1(-lam * r))
        return env * (log_slope * jacobi_p(n, a, b, z) + 2.0 * lam * x * jacobi_p_deriv(n, a, b, z))

    return upper, upper_deriv, lam * alpha


def hulthen_upper(params: ProblemParams, level: Level, r):
    """Unnormalized upper rotated component of a positive-branch level."""
    return _upper_parts(params, level)[0](r)


def hulthen_pair(params: ProblemParams, level: Level, grid) -> SpinorSample:
    """Normalized spinor for ``level`` sampled on ``grid``."""
    if level.branch is Branch.NEGATIVE:
        mapped = params.mapped()
        positive = Level(level.n, -level.epsilon, level.alpha, level.spinor_index, Branch.POSITIVE)
        return negative_from_mapped(hulthen_pair(mapped, positive, grid), derive(params))
    d = derive(params)
    upper, upper_deriv, decay = _upper_parts(params, level)
    return sample_from_upper(params, d, level.epsilon, upper, upper_deriv,
                             hulthen_profile(params, Orbital.APPROX), grid, decay)


def hulthen_nonrel(v0: float, lam: float, n: int, ell: int) -> float:
    """Nonrelativistic limit in atomic units (hbar = m = 1)."""
    if n < 0 or ell < 0:
        raise ValueError("n and ell must be nonnegative")
    k = n + ell + 1
    return -(lam * lam / 8.0) * ((2.0 * v0 / lam**2 - ell * ell) / k + k) ** 2


def spinor_energy(params: ProblemParams, spinor_index: int) -> float:
    """Energy carried by spinor ``spinor_index`` per the index association rule."""
    return hulthen_epsilon(params, formula_index_for(spinor_index, params.kappa))
