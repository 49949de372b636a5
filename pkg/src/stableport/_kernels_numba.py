"""numba-compiled implementations of the hot kernels.

Loop-style twins of :mod:`stableport._kernels_numpy`, compiled with
``@njit``.  Selected by :mod:`stableport.backend` when numba is importable
and ``STABLEPORT_NO_NUMBA`` is not set.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_ALPHA_ONE_TOL = 1e-8
_UNIT_PACF_TOL = 1e-12


@njit(cache=True)
def cms_transform(v, w, alpha, beta):
    n = v.shape[0]
    out = np.empty(n)
    if abs(alpha - 1.0) <= _ALPHA_ONE_TOL:
        half_pi = np.pi / 2
        for i in range(n):
            shifted = half_pi + beta * v[i]
            out[i] = (2.0 / np.pi) * (
                shifted * math.tan(v[i])
                - beta * math.log(half_pi * w[i] * math.cos(v[i]) / shifted)
            )
    else:
        ta = math.tan(np.pi * alpha / 2)
        b_ab = math.atan(beta * ta) / alpha
        s_ab = (1.0 + beta * beta * ta * ta) ** (1.0 / (2 * alpha))
        inv_alpha = 1.0 / alpha
        expo = (1.0 - alpha) / alpha
        for i in range(n):
            arg = alpha * (v[i] + b_ab)
            out[i] = (
                s_ab
                * math.sin(arg)
                / math.cos(v[i]) ** inv_alpha
                * (math.cos(v[i] - arg) / w[i]) ** expo
            )
    return out


@njit(cache=True)
def acf_raw(x, m):
    n = x.shape[0]
    denom = 0.0
    for t in range(n):
        denom += x[t] * x[t]
    r = np.empty(m)
    for k in range(1, m + 1):
        s = 0.0
        for t in range(n - k):
            s += x[t] * x[t + k]
        r[k - 1] = s / denom
    return r


@njit(cache=True)
def durbin_levinson(r):
    m = r.shape[0]
    pacf = np.zeros(m)
    if abs(r[0]) >= 1.0 - _UNIT_PACF_TOL:
        return pacf, False
    pacf[0] = r[0]
    phi = np.zeros(m)
    work = np.zeros(m)
    phi[0] = r[0]
    for k in range(2, m + 1):
        num = r[k - 1]
        den = 1.0
        for j in range(1, k):
            num -= phi[j - 1] * r[k - 1 - j]
            den -= phi[j - 1] * r[j - 1]
        if den <= 0.0:
            return pacf, False
        pk = num / den
        if abs(pk) >= 1.0 - _UNIT_PACF_TOL:
            return pacf, False
        pacf[k - 1] = pk
        for j in range(1, k):
            work[j - 1] = phi[j - 1] - pk * phi[k - 1 - j]
        work[k - 1] = pk
        for j in range(k):
            phi[j] = work[j]
    return pacf, True


@njit(cache=True)
def burg(x, p):
    n = x.shape[0]
    f = x.copy()
    b = x.copy()
    a = np.zeros(p)
    prev = np.zeros(p)
    for k in range(1, p + 1):
        num = 0.0
        den = 0.0
        for t in range(k, n):
            num += f[t] * b[t - 1]
            den += f[t] * f[t] + b[t - 1] * b[t - 1]
        if den <= 0.0:
            return a, False
        rc = 2.0 * num / den
        for j in range(k - 1):
            a[j] = prev[j] - rc * prev[k - 2 - j]
        a[k - 1] = rc
        # descending t so b[t-1] is read before iteration t-1 overwrites it
        for t in range(n - 1, k - 1, -1):
            fo = f[t]
            bo = b[t - 1]
            f[t] = fo - rc * bo
            b[t] = bo - rc * fo
        for j in range(k):
            prev[j] = a[j]
    return a, True


@njit(cache=True)
def ar_simulate(phi, z):
    p = phi.shape[0]
    n = z.shape[0]
    x = np.empty(n)
    for t in range(n):
        s = z[t]
        for i in range(p):
            if t - 1 - i >= 0:
                s += phi[i] * x[t - 1 - i]
        x[t] = s
    return x


@njit(cache=True)
def arma_simulate(phi, theta, z):
    p = phi.shape[0]
    q = theta.shape[0]
    n = z.shape[0]
    x = np.empty(n)
    for t in range(n):
        s = z[t]
        for j in range(q):
            if t - 1 - j >= 0:
                s -= theta[j] * z[t - 1 - j]
        for i in range(p):
            if t - 1 - i >= 0:
                s += phi[i] * x[t - 1 - i]
        x[t] = s
    return x


@njit(cache=True)
def ar_residuals(phi, x):
    p = phi.shape[0]
    n = x.shape[0]
    res = np.empty(n - p)
    for t in range(p, n):
        s = x[t]
        for i in range(p):
            s -= phi[i] * x[t - 1 - i]
        res[t - p] = s
    return res


@njit(cache=True)
def arma_residuals(phi, theta, x):
    p = phi.shape[0]
    q = theta.shape[0]
    n = x.shape[0]
    a = np.zeros(n - p)
    for t in range(p, n):
        s = x[t]
        for i in range(p):
            s -= phi[i] * x[t - 1 - i]
        for j in range(q):
            idx = t - p - 1 - j
            if idx >= 0:
                s += theta[j] * a[idx]
        a[t - p] = s
    return a
