"""Assembly of normalized spinors from an analytic upper component."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureFailure
from .grids import log_linear_grid
from .model import Branch, DerivedParams, ProblemParams
from .reduction import (Basis, PotentialProfile, SpinorPair, lower_from_upper, rotate_to_original,
                        rotate_to_rotated)


@dataclass
class SpinorSample:
    """Normalized spinor on a radial grid in both bases."""

    r: np.ndarray
    phi_plus: np.ndarray
    phi_minus: np.ndarray
    psi_plus: np.ndarray
    psi_minus: np.ndarray
    norm_constant: float
    epsilon: float
    branch: Branch = Branch.POSITIVE

    def rotated(self) -> SpinorPair:
        return SpinorPair(self.r, self.phi_plus, self.phi_minus, Basis.ROTATED)

    def original(self) -> SpinorPair:
        return SpinorPair(self.r, self.psi_plus, self.psi_minus, Basis.ORIGINAL)

    def rows(self):
        return zip(self.r, self.phi_plus, self.phi_minus, self.psi_plus, self.psi_minus)


def norm_integral(density, decay_rate, length_scale, num_points=4000, tol=1e-10):
    """``int_0^inf density(r) dr`` for a density decaying like ``exp(-2 decay_rate r)``.

    Trapezoid rule in the log-linear variable up to ``r_max = 40 / decay_rate``
    (at least ``40 * length_scale``) plus the exponential tail estimate
    ``f(r_max) / (2 decay_rate)``. Raises QuadratureFailure if the tail or
    the difference between two resolutions exceeds ``tol`` relative.
    """
    r_max = max(40.0 / decay_rate, 40.0 * length_scale)
    r_min = 1e-12 * min(length_scale, 1.0 / decay_rate)
    c = min(length_scale, 1.0 / decay_rate)

    def trapz(npts):
        g = log_linear_grid(r_min, r_max, npts, c)
        f = density(g.r) * g.dr_dt
        return float(np.sum(f[1:] + f[:-1]) * 0.5 * g.h), float(density(np.array([r_max]))[0])

    coarse, _ = trapz(num_points)
    fine, f_end = trapz(2 * num_points)
    tail = f_end / (2.0 * decay_rate)
    total = fine + tail
    if not np.isfinite(total) or total <= 0:
        raise QuadratureFailure(f"normalization integral is {total}")
    if abs(tail) > tol * total or abs(fine - coarse) > tol * total:
        raise QuadratureFailure(
            f"normalization not converged: tail {tail:.3e}, resolution change {fine - coarse:.3e}"
        )
    return total


def sample_from_upper(params: ProblemParams, derived: DerivedParams, eps: float, upper, upper_deriv,
                      profile: PotentialProfile, grid, decay_rate: float) -> SpinorSample:
    """Build ``phi-`` from ``phi+`` by the first-order relation, normalize, rotate."""
    lower = lower_from_upper(upper, upper_deriv, derived, params, eps, profile)

    def density(r):
        return upper(r) ** 2 + lower(r) ** 2

    total = norm_integral(density, decay_rate, profile.length_scale)
    a = 1.0 / np.sqrt(total)
    r = np.asarray(grid, dtype=float)
    rotated = SpinorPair(r, a * upper(r), a * lower(r), Basis.ROTATED)
    original = rotate_to_original(rotated, derived)
    return SpinorSample(r, rotated.upper, rotated.lower, original.upper, original.lower,
                        float(a), float(eps), Branch.POSITIVE)


def negative_from_mapped(sample: SpinorSample, derived: DerivedParams) -> SpinorSample:
    """Negative-energy spinor from a positive-energy solution of the mapped problem.

    If ``(psi+, psi-)`` solves the radial system for ``(-v0, -kappa)`` at
    ``eps``, then ``(psi-, psi+)`` solves it for ``(v0, kappa)`` at ``-eps``.
    The swap acts on the original components; the rotated ones follow from
    the (map-invariant) rotation angle.
    """
    original = SpinorPair(sample.r, sample.psi_minus, sample.psi_plus, Basis.ORIGINAL)
    rotated = rotate_to_rotated(original, derived)
    return SpinorSample(sample.r, rotated.upper, rotated.lower, original.upper, original.lower,
                        sample.norm_constant, -sample.epsilon, Branch.NEGATIVE)
