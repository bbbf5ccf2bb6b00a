"""Finite-difference oracle for the Schroedinger-like radial equation.

The equation ``-u'' + U(r; eps) u = (eps^2 - m^2) u`` is discretized after
factoring out the indicial power, ``phi = r^beta u``. Then ``u`` obeys the
Sturm-Liouville problem ``-(w u')'/w + [U - beta(beta-1)/r^2] u``
with ``w = r^(2 beta)``. It is discretized by finite volumes on a log-linear
grid, with a natural (no-flux) end at ``r_min`` and Dirichlet at ``r_max``.
After symmetric scaling the matrix is tridiagonal and eigenvalue counts
come from Sturm sequences.

Bound energies are roots of ``g_k(eps) = Lambda_k(eps) - (eps^2 - m^2)``.
They are located as jumps in the number of eigenvalues below
``eps^2 - m^2``, and the direction of each jump tells which ``k`` crossed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import GridTooCoarse, MultipleRoots, NoRoot
from ..grids import log_linear_grid
from ..model import DerivedParams, ProblemParams
from ..reduction import PotentialProfile, effective_potential
from .config import OracleConfig
from .sturm import gershgorin_bounds, kth_eigenvalue, sturm_count


def indicial_beta(derived: DerivedParams) -> float:
    """Small-r exponent of ``phi+``: ``gamma + 1`` for kappa > 0, ``-gamma`` otherwise."""
    kappa_positive = derived.mu * derived.sin_theta > 0
    return derived.gamma + 1.0 if kappa_positive else -derived.gamma


class RadialOperator:
    """Discretized ``-d^2/dr^2 + a(r) + eps b(r)`` acting on ``phi = r^beta u``."""

    def __init__(self, a: Callable, b: Callable, beta: float, r_min: float, r_max: float,
                 num_points: int, c: float, scale: float = 1.0):
        grid = log_linear_grid(r_min, r_max, num_points + 1, c)
        r, h = grid.r, grid.h
        rh, dh = grid.midpoints()
        ri = r[:-1]

        def log_w(x):
            return 2.0 * beta * np.log(scale * x)

        # normalizing by w at the nodes keeps the r^(2 beta) range harmless
        weights = np.full(num_points, h)
        weights[0] = 0.5 * h
        mass_diag = np.exp(log_w(ri)) * grid.dr_dt[:-1] * weights
        flux = np.exp(log_w(rh)) / dh / h
        stiff = flux.copy()
        stiff[1:] += flux[:-1]

        self.r = ri
        self.num_points = num_points
        self._d0 = stiff / mass_diag + a(ri) - beta * (beta - 1.0) / ri**2
        self._d1 = np.asarray(b(ri), dtype=float) * np.ones_like(ri)
        self._e2 = flux[:-1] ** 2 / (mass_diag[:-1] * mass_diag[1:])

    def diagonal(self, eps: float) -> np.ndarray:
        return self._d0 + eps * self._d1

    def count(self, eps: float, sigma: float) -> int:
        """Number of eigenvalues below ``sigma`` at energy ``eps``."""
        return int(sturm_count(self.diagonal(eps), self._e2, float(sigma)))

    def eigenvalues(self, eps: float, count: int, tol: float) -> np.ndarray:
        d = self.diagonal(eps)
        lo, hi = gershgorin_bounds(d, self._e2)
        return np.array([kth_eigenvalue(d, self._e2, k, lo, hi, tol) for k in range(count)])


def _defaults(profile: PotentialProfile, config: OracleConfig, decay: Optional[float]):
    length = profile.length_scale
    r_min = config.r_min if config.r_min is not None else 1e-10 * length
    if config.r_max is not None:
        r_max = config.r_max
    elif decay is None:
        r_max = 200.0 * length
    else:
        r_max = min(60.0 / decay, 4000.0 * length)
    return r_min, r_max, max(length, r_max / 50.0)


def _profile_operator(profile, derived, config, num_points, decay, beta=None):
    r_min, r_max, c = _defaults(profile, config, decay)
    beta = indicial_beta(derived) if beta is None else beta
    return RadialOperator(
        lambda r: effective_potential(profile, derived, 0.0, r),
        lambda r: 2.0 * profile.v(r),
        beta, r_min, r_max, num_points, c, scale=1.0 / profile.length_scale,
    )


def _combine(coarse, fine, order):
    if order == 4:
        return (4.0 * fine - coarse) / 3.0
    return fine


def fd_eigenvalues(profile: PotentialProfile, derived: DerivedParams, eps: float,
                   config: OracleConfig = OracleConfig(), count: int = 1, mass: float = 1.0,
                   beta: Optional[float] = None) -> np.ndarray:
    """Lowest ``count`` eigenvalues of ``-d^2/dr^2 + U_eff(r; eps)``.

    Raises GridTooCoarse if ``num_points`` and ``2 * num_points`` disagree
    by more than ``refine_tol`` relative to ``max(|Lambda|, mass^2)``.
    """
    tol = config.eps_tol * mass * mass
    values = []
    for n in (config.num_points, 2 * config.num_points):
        op = _profile_operator(profile, derived, config, n, None, beta)
        values.append(op.eigenvalues(eps, count, tol))
    coarse, fine = values
    scale = np.maximum(np.abs(fine), mass * mass)
    if np.any(np.abs(fine - coarse) > config.refine_tol * scale):
        raise GridTooCoarse(f"eigenvalues changed by {np.max(np.abs(fine - coarse)):.3e} under refinement")
    return _combine(coarse, fine, config.stencil_order)


@dataclass(frozen=True)
class SecularRoot:
    """A root of ``g_k``; ``k`` is 1-based (``k - 1`` interior nodes)."""

    k: int
    epsilon: float
    coarse: float
    fine: float

    @property
    def refinement_change(self) -> float:
        return abs(self.fine - self.coarse)


def scan_interval(profile: PotentialProfile, params: ProblemParams, derived: DerivedParams):
    """Positive energies below threshold where a bound state of ``U_eff`` can exist."""
    m = params.mass
    lo, hi = 1e-9 * m, m * (1.0 - 1e-12)
    v = profile.v_inf
    if v != 0.0:
        q = derived.gamma / derived.mu
        edge = v + math.sqrt(v * v + m * m + (q * v) ** 2)
        hi = min(hi, edge * (1.0 - 1e-12))
    return lo, hi


def _decay(profile, derived, mass, eps):
    v = profile.v_inf
    q = derived.gamma / derived.mu
    k2 = (q * v) ** 2 + 2.0 * eps * v - (eps * eps - mass * mass)
    return math.sqrt(max(k2, 1e-12 * mass * mass))


def _scan_energies(lo, hi, num):
    linear = np.linspace(lo, hi, num)
    near_edge = hi - (hi - lo) * np.geomspace(1.0, 1e-9, max(num // 4, 2))
    return np.unique(np.concatenate([linear, near_edge]))


def _transitions(count, a, ca, b, cb, tol):
    """Points where ``count`` changes on ``[a, b]``, bisected to ``tol``."""
    stack, out = [(a, ca, b, cb)], []
    while stack:
        a, ca, b, cb = stack.pop()
        if ca == cb:
            continue
        if b - a <= tol:
            out.append((0.5 * (a + b), ca, cb))
            continue
        mid = 0.5 * (a + b)
        cm = count(mid)
        stack.append((mid, cm, b, cb))
        stack.append((a, ca, mid, cm))
    return sorted(out)


def _labelled_roots(op, mass, lo, hi, scan_points, tol):
    def count(eps):
        return op.count(eps, eps * eps - mass * mass)

    energies = _scan_energies(lo, hi, scan_points)
    counts = [count(e) for e in energies]
    roots = []
    for i in range(len(energies) - 1):
        for eps, ca, cb in _transitions(count, energies[i], counts[i], energies[i + 1], counts[i + 1], tol):
            # a rise c -> c' means Lambda_{c+1..c'} dropped below eps^2 - m^2
            labels = range(ca + 1, cb + 1) if cb > ca else range(cb + 1, ca + 1)
            roots.extend((k, eps) for k in labels)
    return roots


def secular_roots(profile: PotentialProfile, params: ProblemParams, derived: DerivedParams,
                  config: OracleConfig = OracleConfig(), interval=None) -> list[SecularRoot]:
    """All roots of every ``g_k`` on the scan interval, sorted by energy."""
    m = params.mass
    lo, hi = scan_interval(profile, params, derived) if interval is None else interval
    if not lo < hi:
        return []
    decay = _decay(profile, derived, m, hi)
    tol = config.eps_tol * m
    found = []
    for n in (config.num_points, 2 * config.num_points):
        op = _profile_operator(profile, derived, config, n, decay)
        found.append(_labelled_roots(op, m, lo, hi, config.scan_points, tol))
    coarse, fine = found
    if [k for k, _ in coarse] != [k for k, _ in fine]:
        raise GridTooCoarse(
            f"root labels differ between {config.num_points} and {2 * config.num_points} points: "
            f"{[k for k, _ in coarse]} vs {[k for k, _ in fine]}"
        )
    out = []
    for (k, e1), (_, e2) in zip(coarse, fine):
        if abs(e2 - e1) > config.refine_tol * m:
            raise GridTooCoarse(f"root k={k} moved by {abs(e2 - e1):.3e} under refinement")
        out.append(SecularRoot(k, float(_combine(e1, e2, config.stencil_order)), float(e1), float(e2)))
    return sorted(out, key=lambda root: root.epsilon)


def solve_secular(profile: PotentialProfile, params: ProblemParams, derived: DerivedParams, k: int,
                  config: OracleConfig = OracleConfig()) -> float:
    """The energy at which ``Lambda_k(eps) = eps^2 - m^2`` (``k >= 1``)."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    candidates = [root.epsilon for root in secular_roots(profile, params, derived, config) if root.k == k]
    if not candidates:
        raise NoRoot(f"g_{k} has no root on the scan interval")
    if len(candidates) > 1:
        raise MultipleRoots(f"g_{k} has {len(candidates)} roots", candidates)
    return candidates[0]


def secular_value(profile: PotentialProfile, params: ProblemParams, derived: DerivedParams, k: int,
                  eps: float, config: OracleConfig = OracleConfig()) -> float:
    """``g_k(eps)`` on a single grid of ``num_points``."""
    m = params.mass
    op = _profile_operator(profile, derived, config, config.num_points, _decay(profile, derived, m, eps))
    lam_k = op.eigenvalues(eps, k, config.eps_tol * m * m)[k - 1]
    return float(lam_k - (eps * eps - m * m))
