"""Portmanteau statistics and their simulated reference distributions.

Q_BP and D are scaled by (n / log n)^(2/alpha) with the natural logarithm;
Q_LB is the classical finite-variance statistic kept for comparison.
Reference distributions are simulated from the limit law W_h = S_h / S_0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2

from . import backend
from .correlation import CorrelationSequence, _det_root_from_pacf
from .errors import DegeneracyError
from .models import DiagnosticProjection
from .stable import sample_limit_vector

__all__ = [
    "PortmanteauReport",
    "ReferenceDistribution",
    "q_bp_statistic",
    "d_hat_statistic",
    "q_lb_statistic",
    "chi_square_p_value",
    "simulate_reference",
    "asymptotic_p_value",
]

STATISTICS = ("q_bp", "d_hat", "q_lb")
P_METHODS = ("monte_carlo", "simulated_asymptotic", "chi_square")
REFERENCE_KINDS = (
    "randomness_qbp",
    "randomness_dhat",
    "diagnostic_qbp",
    "diagnostic_dhat",
)


@dataclass(frozen=True)
class PortmanteauReport:
    """One test outcome: statistic, lag, value, scaling exponent, p-value,
    and everything needed to reproduce it."""

    statistic: str
    m: int
    value: float
    scaling_alpha: float
    p_value: float
    p_method: str
    replications: int
    seed: object

    def __post_init__(self):
        if self.statistic not in STATISTICS:
            raise ValueError(f"unknown statistic {self.statistic!r}")
        if self.p_method not in P_METHODS:
            raise ValueError(f"unknown p-value method {self.p_method!r}")
        if self.p_method == "chi_square" and self.statistic != "q_lb":
            raise ValueError("chi-square p-values are only valid for q_lb")
        if self.value < 0.0:
            raise ValueError("statistic value must be nonnegative")
        if not 0.0 < self.p_value <= 1.0:
            raise ValueError("p-value must lie in (0, 1]")

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "m": self.m,
            "value": self.value,
            "scaling_alpha": self.scaling_alpha,
            "p_value": self.p_value,
            "p_method": self.p_method,
            "replications": self.replications,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PortmanteauReport":
        seed = d["seed"]
        if isinstance(seed, list):
            seed = tuple(seed)
        return cls(
            statistic=d["statistic"],
            m=int(d["m"]),
            value=float(d["value"]),
            scaling_alpha=float(d["scaling_alpha"]),
            p_value=float(d["p_value"]),
            p_method=d["p_method"],
            replications=int(d["replications"]),
            seed=seed,
        )


@dataclass(frozen=True)
class ReferenceDistribution:
    """Sorted sample of a simulated limit statistic."""

    draws: np.ndarray = field(repr=False)
    sim_count: int
    alpha: float
    m: int
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "draws", np.sort(np.asarray(self.draws, float)))
        if self.kind not in REFERENCE_KINDS:
            raise ValueError(f"unknown reference kind {self.kind!r}")
        if self.draws.size != self.sim_count or self.sim_count < 1:
            raise ValueError("draws/sim_count mismatch")
        if self.draws[0] < 0.0:
            raise ValueError("reference draws must be nonnegative")

    def quantiles(self, probs) -> np.ndarray:
        return np.quantile(self.draws, probs)


def scaling_factor(n: int, alpha: float) -> float:
    """(n / log n)^(2/alpha), natural log."""
    if n <= 2:
        raise ValueError("scaling requires n >= 3")
    if not 0.0 < alpha <= 2.0:
        raise ValueError("alpha must be in (0, 2]")
    return (n / np.log(n)) ** (2.0 / alpha)


def q_bp_statistic(acf: CorrelationSequence, alpha: float) -> float:
    """Box-Pierce analogue: (n/log n)^(2/alpha) * sum of squared ACFs."""
    r = acf.values
    return scaling_factor(acf.n, alpha) * float(r @ r)


def d_hat_statistic(acf: CorrelationSequence, alpha: float) -> float:
    """Determinant statistic: (n/log n)^(2/alpha) * (1 - |R|^(1/m)), with
    the determinant root taken through the PACF product identity."""
    pacf, ok = backend.durbin_levinson(acf.values)
    if not ok:
        raise DegeneracyError(
            "unit partial autocorrelation: autocorrelation matrix is singular"
        )
    det_root = _det_root_from_pacf(pacf, acf.m)
    return scaling_factor(acf.n, alpha) * (1.0 - det_root)


def q_lb_statistic(acf: CorrelationSequence) -> float:
    """Classical Ljung-Box statistic n(n+2) sum r_k^2 / (n-k)."""
    n = acf.n
    if n <= acf.m:
        raise ValueError("need n > m")
    k = np.arange(1, acf.m + 1)
    return float(n * (n + 2) * np.sum(acf.values**2 / (n - k)))


def chi_square_p_value(value: float, m: int) -> float:
    return float(chi2.sf(value, m))


def _limit_draw_statistic(w: np.ndarray, kind: str, weights, projection) -> float:
    if kind == "randomness_qbp":
        return float(w @ w)
    if kind == "randomness_dhat":
        return float(weights @ (w * w))
    if kind == "diagnostic_qbp":
        return float(w @ (projection.complement @ w))
    cw = projection.complement @ w
    return float(cw @ (weights * cw))


def simulate_reference(
    kind: str,
    alpha: float,
    m: int,
    projection: DiagnosticProjection | None = None,
    sim_count: int = 10_000,
    seed: object = 0,
) -> ReferenceDistribution:
    """Simulate the asymptotic reference distribution of a statistic.

    randomness_qbp:  sum W_i^2
    randomness_dhat: sum ((m+1-i)/m) W_i^2
    diagnostic_qbp:  W' (I - Q) W
    diagnostic_dhat: W' (I - Q)' diag((m-i+1)/m) (I - Q) W

    Draw i uses a generator derived from (seed, i), so the result does not
    depend on evaluation order.
    """
    if kind not in REFERENCE_KINDS:
        raise ValueError(f"unknown reference kind {kind!r}")
    diagnostic = kind.startswith("diagnostic")
    if diagnostic and projection is None:
        raise ValueError(f"{kind} requires a diagnostic projection")
    if not diagnostic and projection is not None:
        raise ValueError(f"{kind} does not accept a projection")
    if m < 1:
        raise ValueError("m must be >= 1")
    weights = (m + 1 - np.arange(1, m + 1)) / m
    seed_t = _seed_tuple(seed)
    draws = np.empty(sim_count)
    for i in range(sim_count):
        rng = np.random.default_rng((*seed_t, i))
        w = sample_limit_vector(alpha, m, rng)
        draws[i] = _limit_draw_statistic(w, kind, weights, projection)
    return ReferenceDistribution(
        draws=draws, sim_count=sim_count, alpha=alpha, m=m, kind=kind
    )


def asymptotic_p_value(statistic_value: float, ref: ReferenceDistribution) -> float:
    """Add-one rank p-value: (1 + #{draws >= value}) / (sim_count + 1)."""
    n_geq = ref.sim_count - int(np.searchsorted(ref.draws, statistic_value, "left"))
    return (1 + n_geq) / (ref.sim_count + 1)


def _seed_tuple(seed) -> tuple:
    if isinstance(seed, (tuple, list)):
        return tuple(int(s) for s in seed)
    return (int(seed),)


def _stats_at_lags(
    r: np.ndarray, n: int, alpha: float, statistic: str, lags
) -> np.ndarray:
    """Statistic values at several lags from one ACF prefix of length
    max(lags).  The PACF prefix property makes every lag reachable from a
    single Durbin-Levinson pass."""
    factor = scaling_factor(n, alpha) if statistic != "q_lb" else None
    out = np.empty(len(lags))
    if statistic == "q_bp":
        cum = np.cumsum(r * r)
        for i, m in enumerate(lags):
            out[i] = factor * cum[m - 1]
    elif statistic == "q_lb":
        k = np.arange(1, r.size + 1)
        cum = np.cumsum(r * r / (n - k))
        for i, m in enumerate(lags):
            out[i] = n * (n + 2) * cum[m - 1]
    elif statistic == "d_hat":
        pacf, ok = backend.durbin_levinson(r)
        if not ok:
            raise DegeneracyError("unit partial autocorrelation in statistic")
        for i, m in enumerate(lags):
            out[i] = factor * (1.0 - _det_root_from_pacf(pacf, m))
    else:
        raise ValueError(f"unknown statistic {statistic!r}")
    return out
