"""AR and ARMA models: representation, simulation, fitting, residuals,
impulse responses, and the diagnostic projection matrices."""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np
from scipy.optimize import minimize

from . import backend
from .correlation import CorrelationSequence, sample_acf
from .errors import DataError, FitError
from .stable import estimate_mcculloch

__all__ = [
    "ArModel",
    "ArmaModel",
    "FitResult",
    "DiagnosticProjection",
    "simulate_ar",
    "simulate_arma",
    "fit_burg",
    "fit_least_squares",
    "fit_arma_css",
    "impulse_responses",
    "ar_equivalent",
    "diagnostic_projection",
    "residual_acf",
    "default_burn_in",
]

# residual series shorter than this skip the tail-index estimate
_MIN_RESIDUALS_FOR_ALPHA = 50


def _min_root_modulus(coeffs: np.ndarray) -> float:
    """Smallest root modulus of 1 - c_1 z - ... - c_k z^k."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if c.size == 0:
        return np.inf
    roots = np.roots(np.concatenate(([1.0], -c))[::-1])
    return float(np.abs(roots).min()) if roots.size else np.inf


@dataclass
class ArModel:
    """Autoregressive model X_t = phi_1 X_{t-1} + ... + phi_p X_{t-p} + Z_t.

    Stationarity (all roots of the AR polynomial strictly outside the unit
    circle) is checked on construction; ``check=False`` defers the check to
    simulation time, which least-squares fits need because they carry no
    stationarity guarantee.
    """

    phi: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check):
        self.phi = np.atleast_1d(np.asarray(self.phi, dtype=float))
        if check and not self.is_stationary:
            raise FitError(f"nonstationary AR polynomial: phi={self.phi}")

    @property
    def p(self) -> int:
        return self.phi.size

    @property
    def q(self) -> int:
        return 0

    @property
    def is_stationary(self) -> bool:
        return _min_root_modulus(self.phi) > 1.0


@dataclass
class ArmaModel:
    """ARMA model phi(B) X_t = theta(B) Z_t with theta(B) = 1 - sum theta_j B^j.

    Both polynomials must have roots strictly outside the unit circle
    (stationarity and invertibility).
    """

    phi: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        self.phi = np.atleast_1d(np.asarray(self.phi, dtype=float))
        self.theta = np.atleast_1d(np.asarray(self.theta, dtype=float))
        if not self.is_stationary:
            raise FitError(f"nonstationary AR polynomial: phi={self.phi}")
        if _min_root_modulus(self.theta) <= 1.0:
            raise FitError(f"non-invertible MA polynomial: theta={self.theta}")

    @property
    def p(self) -> int:
        return self.phi.size

    @property
    def q(self) -> int:
        return self.theta.size

    @property
    def is_stationary(self) -> bool:
        return _min_root_modulus(self.phi) > 1.0


@dataclass
class FitResult:
    """A fitted model plus its conditional residuals (length n - p) and the
    tail index estimated from them (None when too few residuals)."""

    model: ArModel | ArmaModel
    residuals: np.ndarray
    method: str
    alpha_hat: float | None = None
    beta_hat: float | None = None


@dataclass
class DiagnosticProjection:
    """Impulse-response design matrix X (m x p), the projection
    Q = X (X'X)^-1 X', and its complement I - Q."""

    x: np.ndarray
    q: np.ndarray
    complement: np.ndarray


def default_burn_in(p: int, q: int = 0) -> int:
    return max(500, 10 * (p + q))


def simulate_ar(model: ArModel, innovations, burn_in: int = 0) -> np.ndarray:
    """Apply the AR recursion from zero initial conditions and discard the
    first ``burn_in`` values."""
    z = np.asarray(innovations, dtype=float)
    if not model.is_stationary:
        raise FitError("cannot simulate a nonstationary AR model")
    if burn_in < 0 or burn_in >= z.size:
        raise ValueError("burn_in must be in [0, len(innovations))")
    x = backend.ar_simulate(model.phi, z)
    return x[burn_in:]


def simulate_arma(model: ArmaModel, innovations, burn_in: int = 0) -> np.ndarray:
    z = np.asarray(innovations, dtype=float)
    if burn_in < 0 or burn_in >= z.size:
        raise ValueError("burn_in must be in [0, len(innovations))")
    x = backend.arma_simulate(model.phi, model.theta, z)
    return x[burn_in:]


def _alpha_beta_from_residuals(residuals: np.ndarray):
    if residuals.size < _MIN_RESIDUALS_FOR_ALPHA:
        return None, None
    try:
        est = estimate_mcculloch(residuals, min_length=_MIN_RESIDUALS_FOR_ALPHA)
    except DataError:
        # degenerate residuals (e.g. an exact fit): no tail index available
        return None, None
    return est.alpha_hat, est.beta_hat


def fit_burg(series, p: int) -> FitResult:
    """Burg AR(p) fit.  Reflection coefficients stay inside (-1, 1), so the
    fitted model is always stationary."""
    x = np.asarray(series, dtype=float)
    n = x.size
    if p < 1:
        raise ValueError("p must be >= 1")
    if n <= 2 * p:
        raise ValueError(f"need n > 2p, got n={n}, p={p}")
    phi, ok = backend.burg(x, p)
    if not ok:
        raise FitError("zero-energy series: Burg recursion is undefined")
    model = ArModel(phi)
    residuals = backend.ar_residuals(model.phi, x)
    alpha_hat, beta_hat = _alpha_beta_from_residuals(residuals)
    return FitResult(model, residuals, "burg", alpha_hat, beta_hat)


def fit_least_squares(series, p: int) -> FitResult:
    """Conditional least-squares AR(p) fit: regress X_t on its p lags for
    t = p+1..n, without intercept.  No stationarity guarantee."""
    x = np.asarray(series, dtype=float)
    n = x.size
    if p < 1:
        raise ValueError("p must be >= 1")
    if n <= 2 * p:
        raise ValueError(f"need n > 2p, got n={n}, p={p}")
    design = np.column_stack([x[p - 1 - i : n - 1 - i] for i in range(p)])
    phi, _, rank, _ = np.linalg.lstsq(design, x[p:], rcond=None)
    if rank < p:
        raise FitError("rank-deficient lag design matrix")
    model = ArModel(phi, check=False)
    residuals = backend.ar_residuals(model.phi, x)
    alpha_hat, beta_hat = _alpha_beta_from_residuals(residuals)
    return FitResult(model, residuals, "least_squares", alpha_hat, beta_hat)


def _shrink_into_region(coeffs: np.ndarray, margin: float = 1e-6) -> np.ndarray:
    """Multiply a coefficient vector by 0.98 until the polynomial roots are
    outside the closed unit disk."""
    c = np.asarray(coeffs, dtype=float).copy()
    for _ in range(2000):
        if _min_root_modulus(c) > 1.0 + margin:
            return c
        c *= 0.98
    raise FitError("could not project coefficients into the stationary region")


def _hannan_rissanen_start(x: np.ndarray, p: int, q: int) -> np.ndarray:
    """Long-AR initialisation for CSS: residuals of a high-order Burg fit
    act as innovation proxies in a joint regression."""
    n = x.size
    h = min(max(10, 2 * (p + q)), n // 4)
    long_fit = fit_burg(x, h)
    a = long_fit.residuals  # aligned with x[h:]
    start = h + max(p, q)
    rows = n - start
    if rows <= p + q:
        raise FitError("series too short for Hannan-Rissanen initialisation")
    cols = []
    for i in range(1, p + 1):
        cols.append(x[start - i : n - i])
    for j in range(1, q + 1):
        cols.append(a[start - h - j : n - h - j])
    design = np.column_stack(cols)
    coef, _, rank, _ = np.linalg.lstsq(design, x[start:], rcond=None)
    if rank < p + q:
        raise FitError("rank-deficient Hannan-Rissanen design")
    phi0 = coef[:p]
    theta0 = -coef[p:]
    return np.concatenate(
        (_shrink_into_region(phi0), _shrink_into_region(theta0))
    )


def fit_arma_css(series, p: int, q: int, max_iter: int = 500) -> FitResult:
    """ARMA(p, q) fit minimising the conditional sum of squared innovations,
    started from a Hannan-Rissanen initialisation.  Iterates whose
    polynomial roots enter the closed unit disk are shrunk back inside.
    With q = 0 this is exactly the least-squares fit."""
    if q == 0:
        return fit_least_squares(series, p)
    x = np.asarray(series, dtype=float)
    n = x.size
    if q < 0 or p < 0:
        raise ValueError("orders must be nonnegative")
    if n <= 2 * (p + q):
        raise ValueError(f"need n > 2(p+q), got n={n}, p={p}, q={q}")

    x0 = _hannan_rissanen_start(x, p, q)

    def objective(vec):
        phi = _shrink_into_region(vec[:p]) if p else np.empty(0)
        theta = _shrink_into_region(vec[p:])
        a = backend.arma_residuals(phi, theta, x)
        return float(a @ a)

    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={"maxiter": max_iter * (p + q), "fatol": 1e-8, "xatol": 1e-8},
    )
    if not np.isfinite(res.fun) or res.fun > objective(x0) + 1e-9:
        raise FitError("CSS optimiser failed to improve on the initial point")
    phi = _shrink_into_region(res.x[:p]) if p else np.empty(0)
    theta = _shrink_into_region(res.x[p:])
    model = ArmaModel(phi, theta)
    residuals = backend.arma_residuals(model.phi, model.theta, x)
    alpha_hat, beta_hat = _alpha_beta_from_residuals(residuals)
    return FitResult(model, residuals, "css", alpha_hat, beta_hat)


def impulse_responses(model: ArModel | ArmaModel, m: int) -> np.ndarray:
    """MA(infinity) coefficients psi_0..psi_{m-1} of the inverted filter,
    psi_0 = 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    phi = model.phi
    theta = model.theta if isinstance(model, ArmaModel) else np.empty(0)
    psi = np.zeros(m)
    psi[0] = 1.0
    for k in range(1, m):
        s = -theta[k - 1] if k <= theta.size else 0.0
        for i in range(min(k, phi.size)):
            s += phi[i] * psi[k - 1 - i]
        psi[k] = s
    return psi


def ar_equivalent(model: ArmaModel) -> ArModel:
    """AR(p+q) representation pi(B) = phi(B) theta(B) whose residuals agree
    with the ARMA model's to first order."""
    phi_poly = np.concatenate(([1.0], -model.phi))
    theta_poly = np.concatenate(([1.0], -model.theta))
    pi_poly = np.convolve(phi_poly, theta_poly)
    return ArModel(-pi_poly[1:])


def diagnostic_projection(model: ArModel | ArmaModel, m: int) -> DiagnosticProjection:
    """Projection capturing the estimation effect on residual ACFs.

    X has columns j = 1..p holding the impulse responses shifted down by
    j - 1 rows; Q = X (X'X)^-1 X' and I - Q is idempotent of rank m - p.
    ARMA models are reduced to their AR(p+q) representation first.
    """
    ar = ar_equivalent(model) if isinstance(model, ArmaModel) else model
    p = ar.p
    if m <= p:
        raise ValueError(f"need m > p, got m={m}, p={p}")
    psi = impulse_responses(ar, m)
    x = np.zeros((m, p))
    for j in range(p):
        x[j:, j] = psi[: m - j]
    gram = x.T @ x
    q = x @ np.linalg.solve(gram, x.T)
    return DiagnosticProjection(x=x, q=q, complement=np.eye(m) - q)


def residual_acf(fit: FitResult, m: int) -> CorrelationSequence:
    """Raw (non-mean-corrected) ACF of the fit residuals."""
    acf = sample_acf(fit.residuals, m)
    return CorrelationSequence(acf.values, acf.n, "residual")
