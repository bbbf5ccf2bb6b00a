"""Sturm-sequence kernels for symmetric tridiagonal matrices.

The matrix is given by its diagonal ``d`` and the squares ``e2`` of its
off-diagonal entries.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def sturm_count(d, e2, sigma):
    """Number of eigenvalues strictly below ``sigma``."""
    count = 0
    q = 1.0
    for i in range(d.shape[0]):
        if i == 0:
            q = d[0] - sigma
        else:
            q = d[i] - sigma - e2[i - 1] / q
        if q == 0.0:
            q = -1e-300 * (1.0 + abs(d[i]))
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def kth_eigenvalue(d, e2, k, lo, hi, tol):
    """The ``k``-th (0-based) eigenvalue by bisection on ``[lo, hi]``."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sturm_count(d, e2, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def gershgorin_bounds(d, e2):
    e = np.sqrt(e2)
    radius = np.zeros_like(d)
    radius[:-1] += e
    radius[1:] += e
    return float(np.min(d - radius)), float(np.max(d + radius))
