"""Terminating Gauss hypergeometric series and Jacobi polynomials.

All functions accept scalar or array arguments ``z`` and return floats or
float arrays of the same shape. Parameters may be arbitrary finite reals;
poles of the Pochhammer denominators raise instead of producing NaNs.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterDegeneracy, PochhammerPole


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def _as_output(z, value):
    if np.ndim(z) == 0:
        return float(value)
    return value


def hyp2f1_poly(n, b, c, z):
    """``2F1(-n, b; c; z)`` summed by forward recursion on the term ratio.

    Raises
    ------
    PochhammerPole
        If ``(c)_k`` vanishes for a term that is actually needed.
    """
    n = _check_degree(n)
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(n):
        if c + k == 0:
            raise PochhammerPole(f"(c)_{k + 1} vanishes for c = {c}, n = {n}")
        term = term * ((-n + k) * (b + k) / ((c + k) * (k + 1))) * z
        total = total + term
    return _as_output(z, total)


def hyp2f1_poly_terms(n, b, c, z):
    """Individual series terms, shape ``(n + 1,) + z.shape``."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=float)
    terms = np.empty((n + 1,) + z.shape)
    terms[0] = 1.0
    for k in range(n):
        if c + k == 0:
            raise PochhammerPole(f"(c)_{k + 1} vanishes for c = {c}, n = {n}")
        terms[k + 1] = terms[k] * ((-n + k) * (b + k) / ((c + k) * (k + 1))) * z
    return terms


def hyp2f1_poly_deriv(n, b, c, z):
    """d/dz of ``2F1(-n, b; c; z)``, i.e. ``(-n b / c) 2F1(-n+1, b+1; c+1; z)``."""
    n = _check_degree(n)
    if n == 0:
        return _as_output(z, np.zeros_like(np.asarray(z, dtype=float)))
    if c == 0:
        raise PochhammerPole(f"(c)_1 vanishes for c = {c}")
    return (-n * b / c) * hyp2f1_poly(n - 1, b + 1, c + 1, z)


def pochhammer(x, k):
    out = 1.0
    for j in range(k):
        out *= x + j
    return out


def _jacobi_recurrence(n, a, b, z):
    z = np.asarray(z, dtype=float)
    p_prev = np.ones_like(z)
    if n == 0:
        return p_prev
    p = 0.5 * (a - b + (a + b + 2.0) * z)
    apb = a + b
    for k in range(2, n + 1):
        a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        if a1 == 0:
            raise ParameterDegeneracy(
                f"Jacobi recurrence degenerates at k = {k} for a = {a}, b = {b}"
            )
        a2 = (2.0 * k + apb - 1.0) * (a * a - b * b)
        a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb)
        p, p_prev = ((a2 + a3 * z) * p - a4 * p_prev) / a1, p
    return p


def jacobi_p(n, a, b, z):
    """Jacobi polynomial ``P_n^(a,b)(z)`` for real parameters.

    Uses ``(a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-z)/2)``; when ``a + 1`` is
    a nonpositive integer that form has a pole and the three-term recurrence
    in ``n`` is used instead.
    """
    n = _check_degree(n)
    z = np.asarray(z, dtype=float)
    try:
        prefactor = pochhammer(a + 1.0, n) / math.factorial(n)
        value = prefactor * np.asarray(hyp2f1_poly(n, n + a + b + 1.0, a + 1.0, (1.0 - z) / 2.0))
    except PochhammerPole:
        try:
            value = _jacobi_recurrence(n, a, b, z)
        except ParameterDegeneracy as exc:
            raise ParameterDegeneracy(
                f"P_{n}^({a},{b}) undefined: hypergeometric pole and {exc}"
            ) from None
    return _as_output(z, value)


def jacobi_p_deriv(n, a, b, z):
    """d/dz ``P_n^(a,b)(z) = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1)(z)``."""
    n = _check_degree(n)
    if n == 0:
        return _as_output(z, np.zeros_like(np.asarray(z, dtype=float)))
    return 0.5 * (n + a + b + 1.0) * jacobi_p(n - 1, a + 1.0, b + 1.0, z)
