"""Two-sided shooting for the first-order radial Dirac system.

The system integrated is

    psi+' = -o(r) psi+ + (m - V + eps) psi-
    psi-' =  o(r) psi- + (m + V - eps) psi+

with orbital term ``o = kappa / r`` (exact) or ``kappa W(r)`` (approximate).
The coefficient matrix is traceless, so the Wronskian of two solutions
does not depend on ``r``. Its zeros in ``eps`` are the bound states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ..errors import InitializationFailure, InvalidParams, StiffIntegration
from ..model import Branch, ProblemParams
from ..reduction import Orbital, PotentialProfile
from .config import OracleConfig


@dataclass(frozen=True)
class ShootingLevel:
    """A root of the matching determinant.

    ``nodes`` counts sign changes of the rotated upper component
    ``cos(t/2) psi+ + sin(t/2) psi-`` with ``sin t = mu/kappa``;
    ``upper_nodes`` counts those of ``psi+`` itself.
    """

    epsilon: float
    nodes: int
    upper_nodes: int


def _orbital_limit(profile: PotentialProfile, kappa: int) -> float:
    return kappa * profile.w_inf if profile.orbital is Orbital.APPROX else 0.0


def continuum_edges(profile: PotentialProfile, params: ProblemParams):
    """Energies between which the solution decays at infinity."""
    half = math.sqrt(params.mass**2 + _orbital_limit(profile, params.kappa) ** 2)
    return profile.v_inf - half, profile.v_inf + half


class _Shooter:
    def __init__(self, profile: PotentialProfile, params: ProblemParams, config: OracleConfig):
        self.profile, self.params, self.config = profile, params, config
        mu, kappa = profile.mu, params.kappa
        if kappa * kappa < mu * mu:
            raise InitializationFailure(f"indicial exponent sqrt(kappa^2 - mu^2) is imaginary (mu = {mu})")
        self.s = math.sqrt(kappa * kappa - mu * mu)
        length = min(profile.length_scale, 1.0 / params.mass)
        self.r_min = config.r_min if config.r_min is not None else 1e-8 * length
        self.orb_inf = _orbital_limit(profile, kappa)

    def rhs(self, eps):
        m, kappa, profile = self.params.mass, self.params.kappa, self.profile

        def f(r, y):
            v = float(profile.v(r))
            o = float(profile.orbital_term(r, kappa))
            return [-o * y[0] + (m - v + eps) * y[1], o * y[1] + (m + v - eps) * y[0]]

        return f

    def geometry(self, eps):
        m = self.params.mass
        k2 = m * m + self.orb_inf**2 - (eps - self.profile.v_inf) ** 2
        if k2 <= 0:
            raise InvalidParams(f"eps = {eps} lies in the continuum")
        k = math.sqrt(k2)
        r_max = self.config.r_max if self.config.r_max is not None else 10.0 * self.profile.length_scale + 40.0 / k
        rr = np.geomspace(self.r_min * 10.0, r_max, 4000)
        allowed = np.nonzero((eps - self.profile.v(rr)) ** 2 - m * m > 0)[0]
        r_match = rr[allowed[-1]] if allowed.size else min(1.0 / k, 0.5 * r_max)
        return r_max, min(max(r_match, 10.0 * self.r_min), 0.5 * r_max)

    def outward_start(self):
        # leading order near the origin: psi ~ r^s (1, -(s + kappa) / mu)
        y = np.array([1.0, -(self.s + self.params.kappa) / self.profile.mu])
        return y / np.linalg.norm(y)

    def inward_start(self, eps, r_max):
        m, profile = self.params.mass, self.profile
        v = float(profile.v(r_max))
        o = float(profile.orbital_term(r_max, self.params.kappa))
        a = np.array([[-o, m - v + eps], [m + v - eps, o]])
        w, vec = np.linalg.eig(a)
        y = vec[:, int(np.argmin(w.real))].real
        return y if y[0] > 0 else -y

    def integrate(self, eps, r0, r1, y0, rtol, dense=False):
        sol = solve_ivp(self.rhs(eps), (r0, r1), y0, method="DOP853", rtol=rtol, atol=1e-300,
                        dense_output=dense)
        if sol.status < 0:
            raise StiffIntegration(f"integration failed at eps = {eps}: {sol.message}")
        return sol

    def determinant(self, eps, rtol):
        r_max, r_match = self.geometry(eps)
        a = self.integrate(eps, self.r_min, r_match, self.outward_start(), rtol).y[:, -1]
        b = self.integrate(eps, r_max, r_match, self.inward_start(eps, r_max), rtol).y[:, -1]
        return float((a[0] * b[1] - a[1] * b[0]) / (np.linalg.norm(a) * np.linalg.norm(b)))

    def nodes(self, eps, rtol):
        r_max, r_match = self.geometry(eps)
        out = self.integrate(eps, self.r_min, r_match, self.outward_start(), rtol, dense=True)
        inn = self.integrate(eps, r_max, r_match, self.inward_start(eps, r_max), rtol, dense=True)
        r_in = np.geomspace(self.r_min, r_match, 4000)
        r_out = np.linspace(r_match, r_max, 4000)[1:]
        y_in, y_out = out.sol(r_in), inn.sol(r_out)
        a, b = out.y[:, -1], inn.y[:, -1]
        j = int(np.argmax(np.abs(b)))
        y = np.concatenate([y_in, y_out * (a[j] / b[j])], axis=1)
        t = math.asin(self.profile.mu / self.params.kappa)
        rotated = math.cos(t / 2) * y[0] + math.sin(t / 2) * y[1]
        return _sign_changes(rotated), _sign_changes(y[0])


def _sign_changes(f):
    f = f[np.abs(f) > 1e-10 * np.max(np.abs(f))]
    return int(np.count_nonzero(np.diff(np.sign(f)) != 0))


def dirac_shoot(profile: PotentialProfile, params: ProblemParams, eps: float,
                config: OracleConfig = OracleConfig()) -> float:
    """Normalized Wronskian of the regular and decaying solutions at ``eps``."""
    return _Shooter(profile, params, config).determinant(eps, config.shoot_rtol)


def _scan(lo, hi, num, edge):
    linear = np.linspace(lo, hi, num)
    offsets = (hi - lo) * np.geomspace(1.0, 1e-9, max(num // 2, 2))
    clustered = hi - offsets if edge > 0 else lo + offsets
    return np.unique(np.concatenate([linear, clustered]))


def dirac_spectrum_shooting(profile: PotentialProfile, params: ProblemParams,
                            config: OracleConfig = OracleConfig(), branch=Branch.POSITIVE,
                            interval=None, scan_points=None) -> list[ShootingLevel]:
    """All determinant zeros on one side of ``eps = 0``, sorted by energy.

    The scan is clustered toward the threshold, where levels accumulate.
    """
    branch = Branch.parse(branch)
    shooter = _Shooter(profile, params, config)
    m = params.mass
    if interval is None:
        low, high = continuum_edges(profile, params)
        delta = 1e-9 * m
        if branch is Branch.POSITIVE:
            interval = (max(delta, low + delta), min(m, high) - delta)
        else:
            interval = (max(-m, low) + delta, min(-delta, high - delta))
    lo, hi = interval
    if not lo < hi:
        return []
    num = scan_points if scan_points is not None else config.scan_points // 2
    energies = _scan(lo, hi, num, +1 if branch is Branch.POSITIVE else -1)
    values = [shooter.determinant(e, config.scan_rtol) for e in energies]
    levels = []
    for i in range(len(energies) - 1):
        if values[i] == 0.0 or np.sign(values[i]) == np.sign(values[i + 1]):
            continue

        def g(e):
            return shooter.determinant(e, config.shoot_rtol)

        a, b = energies[i], energies[i + 1]
        ga, gb = g(a), g(b)
        if np.sign(ga) == np.sign(gb):
            continue
        root = brentq(g, a, b, xtol=config.eps_tol * m * 1e-3, rtol=1e-15)
        nodes, upper_nodes = shooter.nodes(root, config.shoot_rtol)
        levels.append(ShootingLevel(float(root), nodes, upper_nodes))
    return levels
