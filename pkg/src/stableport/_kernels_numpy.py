"""Vectorised numpy/scipy implementations of the hot kernels.

This is the fallback path used when numba is unavailable or disabled via
the ``STABLEPORT_NO_NUMBA`` environment variable.  Every function here has
a loop-style twin in :mod:`stableport._kernels_numba`; the two modules
share signatures and semantics exactly.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

_ALPHA_ONE_TOL = 1e-8
_UNIT_PACF_TOL = 1e-12


def cms_transform(v: np.ndarray, w: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Chambers-Mallows-Stuck transform of (uniform angle, exponential) pairs.

    ``v`` is uniform on (-pi/2, pi/2), ``w`` standard exponential.  Returns
    unit-dispersion stable draws: the characteristic exponent is
    ``-|t|^alpha (1 - i beta sgn(t) tan(pi alpha/2))`` for ``alpha != 1`` and
    ``-|t| (1 + i beta (2/pi) sgn(t) log|t|)`` at ``alpha = 1``.
    """
    if abs(alpha - 1.0) <= _ALPHA_ONE_TOL:
        shifted = np.pi / 2 + beta * v
        return (2.0 / np.pi) * (
            shifted * np.tan(v)
            - beta * np.log((np.pi / 2) * w * np.cos(v) / shifted)
        )
    ta = np.tan(np.pi * alpha / 2)
    b_ab = np.arctan(beta * ta) / alpha
    s_ab = (1.0 + beta * beta * ta * ta) ** (1.0 / (2 * alpha))
    arg = alpha * (v + b_ab)
    return (
        s_ab
        * np.sin(arg)
        / np.cos(v) ** (1.0 / alpha)
        * (np.cos(v - arg) / w) ** ((1.0 - alpha) / alpha)
    )


def acf_raw(x: np.ndarray, m: int) -> np.ndarray:
    """Sample autocorrelations at lags 1..m with the full-sample
    sum-of-squares denominator at every lag."""
    denom = float(x @ x)
    r = np.empty(m)
    for k in range(1, m + 1):
        r[k - 1] = float(x[:-k] @ x[k:]) / denom
    return r


def durbin_levinson(r: np.ndarray) -> tuple[np.ndarray, bool]:
    """Partial autocorrelations from autocorrelations at lags 1..m.

    Returns ``(pacf, ok)``; ``ok`` is False when a reflection coefficient
    reaches unit magnitude (non-positive-definite input).
    """
    m = r.shape[0]
    pacf = np.zeros(m)
    if abs(r[0]) >= 1.0 - _UNIT_PACF_TOL:
        return pacf, False
    pacf[0] = r[0]
    phi = np.array([r[0]])
    for k in range(2, m + 1):
        num = r[k - 1] - float(phi @ r[k - 2 :: -1][: k - 1])
        den = 1.0 - float(phi @ r[: k - 1])
        if den <= 0.0:
            return pacf, False
        pk = num / den
        if abs(pk) >= 1.0 - _UNIT_PACF_TOL:
            return pacf, False
        pacf[k - 1] = pk
        phi = np.concatenate((phi - pk * phi[::-1], [pk]))
    return pacf, True


def burg(x: np.ndarray, p: int) -> tuple[np.ndarray, bool]:
    """Burg AR(p) estimate.  Returns ``(phi, ok)``; ``ok`` is False for a
    zero-energy series.  Reflection coefficients are below one in magnitude
    so the fitted polynomial always has roots outside the unit circle."""
    n = x.shape[0]
    f = x.astype(float).copy()
    b = x.astype(float).copy()
    a = np.zeros(p)
    for k in range(1, p + 1):
        fk = f[k:]
        bk = b[k - 1 : n - 1]
        den = float(fk @ fk) + float(bk @ bk)
        if den <= 0.0:
            return a, False
        rc = 2.0 * float(fk @ bk) / den
        prev = a[: k - 1].copy()
        a[: k - 1] = prev - rc * prev[::-1]
        a[k - 1] = rc
        f_new = fk - rc * bk
        b_new = bk - rc * fk
        f[k:] = f_new
        b[k:] = b_new
    return a, True


def ar_simulate(phi: np.ndarray, z: np.ndarray) -> np.ndarray:
    """AR recursion from zero initial conditions over the whole innovation
    sequence (burn-in removal is the caller's job)."""
    return lfilter([1.0], np.concatenate(([1.0], -phi)), z)


def arma_simulate(phi: np.ndarray, theta: np.ndarray, z: np.ndarray) -> np.ndarray:
    """ARMA recursion x_t = sum phi_i x_{t-i} + z_t - sum theta_j z_{t-j}
    from zero initial conditions."""
    return lfilter(
        np.concatenate(([1.0], -theta)), np.concatenate(([1.0], -phi)), z
    )


def ar_residuals(phi: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Conditional AR residuals for t = p+1..n (length n - p)."""
    p = phi.shape[0]
    n = x.shape[0]
    res = x[p:].astype(float).copy()
    for i in range(p):
        res -= phi[i] * x[p - 1 - i : n - 1 - i]
    return res


def arma_residuals(phi: np.ndarray, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Conditional ARMA innovations for t = p+1..n with pre-sample
    innovations set to zero."""
    u = ar_residuals(phi, x)
    return lfilter([1.0], np.concatenate(([1.0], -theta)), u)
