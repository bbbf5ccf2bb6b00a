"""Radial grids.

The log-linear map ``t = r + c ln r`` is geometric for ``r << c`` and
uniform for ``r >> c``; uniform steps in ``t`` resolve both the power-law
origin and the exponential tail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _invert(t, c, iterations=80):
    # Newton on u = ln r for exp(u) + c u = t; convex and monotone.
    t = np.asarray(t, dtype=float)
    u = np.where(t > c, np.log(np.maximum(t, 1e-300)), t / c)
    for _ in range(iterations):
        eu = np.exp(u)
        step = (eu + c * u - t) / (eu + c)
        u = u - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(u))):
            break
    return np.exp(u)


@dataclass(frozen=True)
class MappedGrid:
    t: np.ndarray
    r: np.ndarray
    dr_dt: np.ndarray
    h: float
    c: float

    def midpoints(self):
        """Radii and ``dr/dt`` at the half steps in ``t``."""
        rh = _invert(0.5 * (self.t[1:] + self.t[:-1]), self.c)
        return rh, rh / (rh + self.c)


def log_linear_grid(r_min: float, r_max: float, num_points: int, c: float) -> MappedGrid:
    if not 0 < r_min < r_max:
        raise ValueError(f"need 0 < r_min < r_max, got {r_min}, {r_max}")
    t = np.linspace(r_min + c * np.log(r_min), r_max + c * np.log(r_max), num_points)
    r = _invert(t, c)
    r[0], r[-1] = r_min, r_max
    return MappedGrid(t=t, r=r, dr_dt=r / (r + c), h=float(t[1] - t[0]), c=c)


def uniform_grid(r_min: float, r_max: float, num_points: int) -> np.ndarray:
    return np.linspace(r_min, r_max, num_points)


def parse_grid(spec: str) -> np.ndarray:
    """Parse ``"rmin:rmax:npts"``."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like rmin:rmax:npts, got {spec!r}")
    r_min, r_max, npts = float(parts[0]), float(parts[1]), int(parts[2])
    if not 0 < r_min < r_max or npts < 2:
        raise ValueError(f"invalid grid {spec!r}")
    return uniform_grid(r_min, r_max, npts)
