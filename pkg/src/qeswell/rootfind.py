"""Polynomial root extraction via Aberth-Ehrlich simultaneous iteration.

Coefficients are ascending (``p(z) = c[0] + c[1] z + ...``).  Degrees one
and two are solved in closed form (the quadratic uses the sign trick to
avoid cancellation); higher degrees run the simultaneous iteration in
complex arithmetic.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError

ABERTH_TOL = 1e-13
ABERTH_MAX_ITER = 200
#: roots with |Im z| <= REAL_TOL * (1 + |Re z|) are reported as real
REAL_TOL = 1e-8


def _quadratic_roots(c0, c1, c2):
    disc = c1 * c1 - 4.0 * c2 * c0
    sq = np.sqrt(complex(disc))
    q = -0.5 * (c1 + sq) if c1.real >= 0 else -0.5 * (c1 - sq)
    if q == 0:
        return np.array([0.0j, 0.0j])
    return np.array([q / c2, c0 / q])


def _initial_guesses(coeffs):
    deg = coeffs.size - 1
    lead = coeffs[-1]
    center = -coeffs[-2] / (deg * lead)
    # Fujiwara bound on root magnitudes, taken about the origin
    mags = np.abs(coeffs[:-1] / lead)
    with np.errstate(divide="ignore"):
        radius = 2.0 * np.max(mags ** (1.0 / np.arange(deg, 0, -1)))
    radius = max(radius, 1e-3) + abs(center)
    angles = 2.0 * np.pi * np.arange(deg) / deg + 0.4
    return center + radius * np.exp(1j * angles)


def _horner_pair(coeffs, z):
    """Evaluate p, p', and a running roundoff bound for |p| at points ``z``."""
    p = np.full_like(z, coeffs[-1])
    dp = np.zeros_like(z)
    err = np.abs(p)
    absz = np.abs(z)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
        err = err * absz + np.abs(p)
    return p, dp, np.finfo(float).eps * err


def aberth_roots(coeffs, tol: float = ABERTH_TOL, max_iter: int = ABERTH_MAX_ITER) -> np.ndarray:
    """All complex roots of the polynomial with ascending ``coeffs``.

    A root is accepted once its correction is below ``tol`` (relative) or
    the polynomial value falls under the attainable roundoff floor of the
    Horner evaluation, whichever comes first.
    """
    c = np.asarray(coeffs, dtype=complex)
    while c.size > 1 and c[-1] == 0:
        c = c[:-1]
    deg = c.size - 1
    if deg <= 0:
        return np.array([], dtype=complex)
    if deg == 1:
        return np.array([-c[0] / c[1]])
    if deg == 2:
        return _quadratic_roots(*c)

    z = _initial_guesses(c)
    for _ in range(max_iter):
        p, dp, floor = _horner_pair(c, z)
        dp = np.where(dp == 0, 1e-300, dp)
        newton = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        recip = 1.0 / diff
        np.fill_diagonal(recip, 0.0)
        denom = 1.0 - newton * recip.sum(axis=1)
        denom = np.where(denom == 0, 1e-300, denom)
        step = newton / denom
        at_floor = np.abs(p) <= 4.0 * floor
        step = np.where(at_floor, 0.0, step)
        z = z - step
        if np.all(at_floor | (np.abs(step) <= tol * (1.0 + np.abs(z)))):
            return z
    raise ConvergenceError(f"Aberth iteration did not converge in {max_iter} steps")


def split_real(roots, tol: float = REAL_TOL):
    """Partition ``roots`` into (sorted real parts, remaining complex values)."""
    roots = np.asarray(roots, dtype=complex)
    mask = np.abs(roots.imag) <= tol * (1.0 + np.abs(roots.real))
    real = np.sort(roots.real[mask])
    complex_rest = [complex(r) for r in roots[~mask]]
    return real, complex_rest


def real_roots(coeffs, tol: float = REAL_TOL):
    """Convenience wrapper: sorted real roots plus leftover complex ones."""
    return split_real(aberth_roots(coeffs), tol=tol)
