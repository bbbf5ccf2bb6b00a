"""Closed-form Dirac-Eckart solution, ``V = v0 coth(lam r)``.

With ``x = coth(lam r)`` the ansatz
``phi+ = (x+1)^-alpha (x-1)^beta 2F1(-k, 2 beta - 2 alpha + k + 1; 2 beta + 1; (1-x)/2)``
terminates when ``alpha - beta = n + |gamma|`` (``k`` is the spinor index,
``n`` the formula index). Since ``alpha^2 - beta^2 = -eps mu / lam`` that
fixes ``beta = (-eps mu / (lam nu) - nu) / 2`` with ``nu = n + |gamma|``;
squaring the condition gives the closed energy formula, and a formula value
is a bound state only when that ``beta`` is positive.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ComplexExponent, IndexBeyondSpectrum, NoBoundLevels
from .model import (Branch, Level, ProblemParams, derive, formula_index_for, is_bound_energy,
                    mapped_levels, spinor_index_for)
from .reduction import Orbital, eckart_profile
from .specfun import hyp2f1_poly, hyp2f1_poly_deriv
from .wavefunction import SpinorSample, negative_from_mapped, sample_from_upper


def eckart_exponents(params: ProblemParams, eps: float) -> tuple[float, float]:
    """Ansatz exponents ``(alpha, beta)``.

    ``alpha = sqrt(kappa^2 + [m^2 - (eps + v0)^2] / lam^2) / 2`` and ``beta``
    is the same with ``eps - v0``.
    """
    lam2 = params.lam**2
    base = params.kappa**2 + params.mass**2 / lam2
    arg_a = base - (eps + params.v0) ** 2 / lam2
    arg_b = base - (eps - params.v0) ** 2 / lam2
    if arg_a < 0 or arg_b < 0:
        raise ComplexExponent(f"eps = {eps} gives complex exponents ({arg_a:.3e}, {arg_b:.3e})")
    return 0.5 * math.sqrt(arg_a), 0.5 * math.sqrt(arg_b)


def exponents_real(params: ProblemParams, eps: float) -> bool:
    try:
        eckart_exponents(params, eps)
    except ComplexExponent:
        return False
    return True


def eckart_epsilon(params: ProblemParams, n: int) -> float:
    """Positive-energy formula value for index ``n``."""
    if n < 0:
        raise IndexBeyondSpectrum(f"n must be nonnegative, got {n}")
    d = derive(params)
    g = d.abs_gamma
    arg = (params.mass / params.lam) ** 2 - n * (n + 2.0 * g)
    if arg < 0:
        raise IndexBeyondSpectrum(f"n = {n} is beyond the spectrum ((m/lam)^2 - n(n+2|gamma|) = {arg:.3e})")
    nu = n + g
    if nu == 0.0:
        # |gamma| = 0 only on the boundary |mu| = |kappa|; the n = 0 value is mC = 0
        return 0.0
    return params.lam * math.sqrt(arg) / math.sqrt(1.0 + (d.mu / nu) ** 2)


def eckart_nmax(params: ProblemParams) -> int:
    """Largest ``n`` keeping the energy formula real."""
    d = derive(params)
    g = d.abs_gamma
    ratio = params.mass / params.lam
    if g == 0.0:
        big = ratio
    else:
        big = g * (-1.0 + math.sqrt(1.0 + (ratio / g) ** 2))
    n = max(0, int(math.floor(big)))
    while n > 0 and ratio**2 < n * (n + 2.0 * g):
        n -= 1
    while ratio**2 >= (n + 1) * (n + 1 + 2.0 * g):
        n += 1
    return n


def termination_beta(params: ProblemParams, n: int, eps: float) -> float:
    """``beta`` implied by ``alpha - beta = n + |gamma|``; positive at a true level."""
    d = derive(params)
    nu = n + d.abs_gamma
    if nu == 0.0:
        return -math.inf
    return 0.5 * (-eps * d.mu / (params.lam * nu) - nu)


def raw_levels(params: ProblemParams) -> list[Level]:
    """Every formula value ``n = 0..n_max`` with physical/bound flags."""
    out = []
    for n in range(eckart_nmax(params) + 1):
        eps = eckart_epsilon(params, n)
        spinor = spinor_index_for(n, params.kappa)
        real = exponents_real(params, eps)
        alpha, beta = eckart_exponents(params, eps) if real else (math.nan, math.nan)
        b_term = termination_beta(params, n, eps)
        tol = 1e-12 * max(1.0, abs(b_term))
        physical = spinor is not None and real and is_bound_energy(eps, params.mass) and b_term > tol
        out.append(Level(n, eps, alpha, spinor, Branch.POSITIVE, beta=beta,
                         physical=physical, bound_check=real))
    return out


def eckart_spectrum(params: ProblemParams, branch=Branch.POSITIVE) -> list[Level]:
    """Physical levels ordered by spinor index; negative branch via ``params.mapped()``."""
    branch = Branch.parse(branch)
    if branch is Branch.NEGATIVE:
        return mapped_levels(eckart_spectrum(params.mapped()), branch)
    levels = [lv for lv in raw_levels(params) if lv.physical and lv.bound_check]
    return sorted(levels, key=lambda lv: lv.spinor_index)


def find_level(params: ProblemParams, spinor_index: int, branch=Branch.POSITIVE) -> Level:
    for lv in eckart_spectrum(params, branch):
        if lv.spinor_index == spinor_index:
            return lv
    raise NoBoundLevels(f"no {Branch.parse(branch).value} level with spinor index {spinor_index}")


def _upper_parts(params: ProblemParams, level: Level):
    k = level.spinor_index
    if k is None:
        raise NoBoundLevels(f"formula index {level.n} carries no spinor")
    lam = params.lam
    alpha, beta = eckart_exponents(params, level.epsilon)
    b, c = 2.0 * beta - 2.0 * alpha + k + 1.0, 2.0 * beta + 1.0

    def parts(r):
        r = np.asarray(r, dtype=float)
        em = -np.expm1(-2.0 * lam * r)              # 1 - exp(-2 lam r)
        log_xm1 = math.log(2.0) - 2.0 * lam * r - np.log(em)
        log_xp1 = math.log(2.0) - np.log(em)
        xm1 = np.exp(log_xm1)
        env = np.exp(-alpha * log_xp1 + beta * log_xm1)
        return xm1, env

    def upper(r):
        xm1, env = parts(r)
        return env * hyp2f1_poly(k, b, c, -0.5 * xm1)

    def upper_deriv(r):
        xm1, env = parts(r)
        xp1 = xm1 + 2.0
        z = -0.5 * xm1
        slope = lam * (alpha * xm1 - beta * xp1)
        return env * (slope * hyp2f1_poly(k, b, c, z)
                      + 0.5 * lam * xm1 * xp1 * hyp2f1_poly_deriv(k, b, c, z))

    return upper, upper_deriv, 2.0 * lam * beta


def eckart_upper(params: ProblemParams, level: Level, r):
    """Unnormalized upper rotated component of a positive-branch level."""
    return _upper_parts(params, level)[0](r)


def eckart_pair(params: ProblemParams, level: Level, grid) -> SpinorSample:
    """Normalized spinor for ``level`` sampled on ``grid``."""
    if level.branch is Branch.NEGATIVE:
        mapped = params.mapped()
        positive = Level(level.n, -level.epsilon, level.alpha, level.spinor_index, Branch.POSITIVE,
                         level.beta)
        return negative_from_mapped(eckart_pair(mapped, positive, grid), derive(params))
    d = derive(params)
    upper, upper_deriv, decay = _upper_parts(params, level)
    return sample_from_upper(params, d, level.epsilon, upper, upper_deriv,
                             eckart_profile(params, Orbital.APPROX), grid, decay)


def eckart_nonrel(v0: float, lam: float, n: int, ell: int) -> float:
    """Nonrelativistic limit in atomic units (hbar = m = 1)."""
    if n < 0 or ell < 0:
        raise ValueError("n and ell must be nonnegative")
    k = n + ell + 1
    return -(lam * lam / 2.0) * ((v0 / lam**2 / k) ** 2 + k * k - ell * ell)


def spinor_energy(params: ProblemParams, spinor_index: int) -> float:
    """Energy carried by spinor ``spinor_index`` per the index association rule."""
    return eckart_epsilon(params, formula_index_for(spinor_index, params.kappa))
