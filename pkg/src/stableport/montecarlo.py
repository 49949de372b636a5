"""Monte-Carlo (parametric bootstrap) portmanteau tests.

Randomness testing simulates IID stable series under the estimated tail
index; diagnostic checking simulates the fitted model and refits it on
every replicate, so the estimation effect on residual autocorrelations is
captured automatically.  P-values use the add-one rank (k+1)/(B+1), with
ties counting as "greater or equal".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DegeneracyError, FitError
from .models import (
    FitResult,
    default_burn_in,
    fit_arma_css,
    fit_burg,
    fit_least_squares,
    simulate_ar,
    simulate_arma,
)
from .portmanteau import STATISTICS, PortmanteauReport, _seed_tuple, _stats_at_lags
from .stable import StableParams, estimate_mcculloch, sample_stable

__all__ = ["McConfig", "mc_test_randomness", "mc_test_diagnostic", "count_geq"]

FIT_METHODS = ("burg", "least_squares", "css")

_MAX_REPLICATE_RETRIES = 10


@dataclass
class McConfig:
    """Configuration of one Monte-Carlo test run."""

    B: int = 1000
    master_seed: object = 0
    statistic: str = "d_hat"
    lags: tuple = (5, 10, 20)
    fit_method: str = "burg"
    alpha_override: float | None = None
    beta_passthrough: bool = False
    acf_kind: str | None = None  # None: mean-corrected iff alpha_hat > 1

    def __post_init__(self):
        self.lags = tuple(int(m) for m in self.lags)
        if not 100 <= self.B <= 100_000:
            raise ValueError(f"B must be in [100, 100000], got {self.B}")
        if not self.lags or any(m < 1 for m in self.lags):
            raise ValueError("lags must be a nonempty tuple of positive ints")
        if self.statistic not in STATISTICS:
            raise ValueError(f"unknown statistic {self.statistic!r}")
        if self.fit_method not in FIT_METHODS:
            raise ValueError(f"unknown fit method {self.fit_method!r}")
        if self.acf_kind not in (None, "raw", "mean_corrected"):
            raise ValueError("acf_kind must be None, 'raw' or 'mean_corrected'")


def count_geq(replicate_stats, observed) -> int:
    """Number of replicate statistics >= the observed one (ties count)."""
    return int(np.sum(np.asarray(replicate_stats) >= observed))


def _acf_values(x: np.ndarray, m: int, kind: str) -> np.ndarray:
    if kind == "mean_corrected":
        x = x - x.mean()
    if not np.any(x != 0.0):
        raise DegeneracyError("degenerate (constant or all-zero) series")
    return backend.acf_raw(x, m)


def _pick_kind(alpha: float, override: str | None) -> str:
    if override is not None:
        return override
    return "mean_corrected" if alpha > 1.0 else "raw"


def _reports(config, statistics, lags, observed, counts):
    out = {}
    for s in statistics:
        out[s] = [
            PortmanteauReport(
                statistic=s,
                m=m,
                value=float(observed[s][i]),
                scaling_alpha=observed["alpha"],
                p_value=(counts[s][i] + 1) / (config.B + 1),
                p_method="monte_carlo",
                replications=config.B,
                seed=config.master_seed,
            )
            for i, m in enumerate(lags)
        ]
    return out


def _mc_randomness(series, config: McConfig, statistics) -> dict:
    x = np.asarray(series, dtype=float)
    n = x.size
    if n < 100:
        raise ValueError(f"randomness test requires n >= 100, got {n}")
    if max(config.lags) >= n:
        raise ValueError("every lag must be < n")

    beta = 0.0
    if config.alpha_override is not None:
        alpha = config.alpha_override
    else:
        est = estimate_mcculloch(x)
        alpha = est.alpha_hat
        if config.beta_passthrough:
            beta = est.beta_hat
    kind = _pick_kind(alpha, config.acf_kind)
    m_max = max(config.lags)

    observed = {"alpha": alpha}
    r_obs = _acf_values(x, m_max, kind)
    for s in statistics:
        observed[s] = _stats_at_lags(r_obs, n, alpha, s, config.lags)

    counts = {s: np.zeros(len(config.lags), dtype=int) for s in statistics}
    seed_t = _seed_tuple(config.master_seed)
    params = StableParams(alpha=alpha, sigma=1.0, beta=beta, mu=0.0)
    for b in range(config.B):
        rng = np.random.default_rng((*seed_t, b))
        z = sample_stable(params, n, rng)
        r = _acf_values(z, m_max, kind)
        for s in statistics:
            stats_b = _stats_at_lags(r, n, alpha, s, config.lags)
            counts[s] += stats_b >= observed[s]
    return _reports(config, statistics, config.lags, observed, counts)


def mc_test_randomness(series, config: McConfig) -> list[PortmanteauReport]:
    """Monte-Carlo randomness test; one report per configured lag.

    All lags share a single batch of B replicate series, and the tail index
    estimated from the observed series scales every replicate statistic.
    """
    return _mc_randomness(series, config, (config.statistic,))[config.statistic]


def _fit(series, p: int, q: int, method: str) -> FitResult:
    if method == "burg":
        if q != 0:
            raise ValueError("burg fitting requires q = 0")
        return fit_burg(series, p)
    if method == "least_squares":
        if q != 0:
            raise ValueError("least-squares fitting requires q = 0")
        return fit_least_squares(series, p)
    return fit_arma_css(series, p, q)


def _simulate_fit(fit: FitResult, innovations) -> np.ndarray:
    model = fit.model
    burn = default_burn_in(model.p, model.q)
    if model.q:
        return simulate_arma(model, innovations, burn)
    return simulate_ar(model, innovations, burn)


def _mc_diagnostic(series, p: int, q: int, config: McConfig, statistics) -> dict:
    x = np.asarray(series, dtype=float)
    n = x.size
    if n <= 2 * (p + q):
        raise ValueError(f"need n > 2(p+q), got n={n}")
    fit = _fit(x, p, q, config.fit_method)
    if not fit.model.is_stationary:
        raise FitError(
            "fitted model is nonstationary and cannot be simulated; "
            "use the Burg fit for a stationarity guarantee"
        )
    if config.alpha_override is not None:
        alpha = config.alpha_override
    elif fit.alpha_hat is not None:
        alpha = fit.alpha_hat
    else:
        raise FitError("too few residuals to estimate the tail index")
    beta = (fit.beta_hat or 0.0) if config.beta_passthrough else 0.0

    m_max = max(config.lags)
    if m_max >= fit.residuals.size:
        raise ValueError("every lag must be below the residual count")

    observed = {"alpha": alpha}
    r_obs = _acf_values(fit.residuals, m_max, "raw")
    n_res = fit.residuals.size
    for s in statistics:
        observed[s] = _stats_at_lags(r_obs, n_res, alpha, s, config.lags)

    counts = {s: np.zeros(len(config.lags), dtype=int) for s in statistics}
    seed_t = _seed_tuple(config.master_seed)
    params = StableParams(alpha=alpha, sigma=1.0, beta=beta, mu=0.0)
    burn = default_burn_in(fit.model.p, fit.model.q)
    for b in range(config.B):
        for attempt in range(_MAX_REPLICATE_RETRIES):
            rng = np.random.default_rng((*seed_t, b, attempt))
            try:
                z = sample_stable(params, n + burn, rng)
                xb = _simulate_fit(fit, z)
                refit = _fit(xb, p, q, config.fit_method)
                r = _acf_values(refit.residuals, m_max, "raw")
                stats_b = {
                    s: _stats_at_lags(r, refit.residuals.size, alpha, s, config.lags)
                    for s in statistics
                }
                break
            except (FitError, DegeneracyError):
                continue
        else:
            raise FitError(
                f"replicate {b}: fit failed {_MAX_REPLICATE_RETRIES} times"
            )
        for s in statistics:
            counts[s] += stats_b[s] >= observed[s]
    result = _reports(config, statistics, config.lags, observed, counts)
    result["fit"] = fit
    return result


def mc_test_diagnostic(series, p: int, q: int, config: McConfig) -> list[PortmanteauReport]:
    """Monte-Carlo diagnostic check of a fitted AR(p) or ARMA(p, q) model.

    Each replicate simulates the fitted model with IID stable innovations
    under the residual tail index, refits the same orders by the same
    method, and recomputes the statistic on the replicate's residuals.
    Replicate fit failures retry with a fresh stream up to 10 times.
    """
    return _mc_diagnostic(series, p, q, config, (config.statistic,))[config.statistic]
