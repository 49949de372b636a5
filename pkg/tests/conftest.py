import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)


def random_pacf(gen, m, bound=0.9):
    """Random partial autocorrelations strictly inside (-bound, bound)."""
    return gen.uniform(-bound, bound, m)


def pacf_to_acf(pacf):
    """Invert the Durbin-Levinson recursion: a PACF sequence with entries in
    (-1, 1) maps to a positive-definite autocorrelation sequence."""
    pacf = np.asarray(pacf, float)
    m = pacf.size
    r = np.empty(m)
    phi = np.empty(m)
    r[0] = pacf[0]
    phi[0] = pacf[0]
    for k in range(2, m + 1):
        prev = phi[: k - 1].copy()
        v = 1.0 - prev @ r[: k - 1]
        r[k - 1] = pacf[k - 1] * v + prev @ r[: k - 1][::-1]
        phi[k - 1] = pacf[k - 1]
        phi[: k - 1] = prev - pacf[k - 1] * prev[::-1]
    return r


def random_stationary_ar(gen, p, bound=0.9):
    """Random stationary AR(p) coefficients via reflection coefficients."""
    k = gen.uniform(-bound, bound, p)
    phi = np.empty(p)
    phi[0] = k[0]
    for j in range(1, p):
        prev = phi[:j].copy()
        phi[:j] = prev - k[j] * prev[::-1]
        phi[j] = k[j]
    return phi
