"""Config-driven simulation experiments: size tables, a power table, and
convergence-figure data.

Every run is reproducible bit-for-bit from (config, seed): outer replication
i of cell c uses a generator seeded by (seed, cell_index, i), and the inner
Monte-Carlo tests derive their replicate streams the same way.  Results are
emitted as one row per cell (CSV) plus a machine-readable run manifest.
"""

from __future__ import annotations

import csv
import importlib.resources
import json
import platform
import time
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy

from . import backend
from .errors import DataError
from .models import (
    ArmaModel,
    ArModel,
    default_burn_in,
    diagnostic_projection,
    fit_burg,
    simulate_ar,
    simulate_arma,
)
from .correlation import sample_acf
from .montecarlo import McConfig, _mc_diagnostic, _mc_randomness
from .portmanteau import d_hat_statistic, scaling_factor, simulate_reference
from .stable import StableParams, sample_limit_vector, sample_stable

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "run_size_randomness",
    "run_size_diagnostic",
    "run_power_diagnostic",
    "run_convergence_figure",
    "load_packaged_models",
]

EXPERIMENTS = (
    "size_randomness",
    "size_diagnostic",
    "power_diagnostic",
    "convergence_figure",
)

QUANTILE_PROBS = (0.05, 0.10, 0.30, 0.50, 0.70, 0.90, 0.95, 0.975, 0.99)


@dataclass
class ExperimentConfig:
    """Scale and design knobs of one experiment.

    Desk-scale defaults (N_outer = 500, B = 200) finish in minutes; the
    paper-scale values (N_outer = 10^4, B = 10^3) remain reachable.
    """

    experiment: str
    alpha: tuple = (1.5,)
    phi: tuple = (0.0, 0.1, -0.1, 0.3, -0.3, 0.5, -0.5, 0.7, -0.7, 0.9, -0.9)
    models: list | None = None  # power study: list of {"phi": [...], "theta": [...]}
    n: object = 250  # int, or a grid of ints for convergence_figure
    N_outer: int = 500
    B: int = 200
    lags: tuple = (5, 10, 20)
    statistics: tuple = ("q_bp", "d_hat")
    level: float = 0.05
    seed: int = 0
    fit_method: str = "burg"
    mode: str = "statistic"  # convergence_figure: "statistic" or "residual"
    m: int = 5  # convergence_figure lag
    ref_sim_count: int = 10_000

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        self.alpha = tuple(float(a) for a in self.alpha)
        self.phi = tuple(float(f) for f in self.phi)
        self.lags = tuple(int(m) for m in self.lags)
        self.statistics = tuple(self.statistics)
        if self.N_outer < 100:
            raise ValueError("N_outer must be >= 100")
        if not 0.0 < self.level < 1.0:
            raise ValueError("level must be in (0, 1)")
        if self.mode not in ("statistic", "residual"):
            raise ValueError("mode must be 'statistic' or 'residual'")
        if any(not 0.0 < a <= 2.0 for a in self.alpha):
            raise ValueError("alpha grid values must be in (0, 2]")

    @property
    def n_grid(self) -> tuple:
        if isinstance(self.n, (list, tuple)):
            return tuple(int(v) for v in self.n)
        return (int(self.n),)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            try:
                d = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DataError(f"invalid experiment config {path}: {exc}") from exc
        return cls.from_dict(d)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("alpha", "phi", "lags", "statistics"):
            d[key] = list(d[key])
        if isinstance(d["n"], tuple):
            d["n"] = list(d["n"])
        return d


@dataclass
class ExperimentResult:
    """Rows of per-cell output plus everything needed to rerun them."""

    rows: list
    config: ExperimentConfig
    elapsed_seconds: float
    versions: dict = field(default_factory=dict)

    def write_csv(self, path) -> None:
        if not self.rows:
            raise ValueError("no rows to write")
        fieldnames = list(self.rows[0])
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(self.rows)

    def manifest(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "seed": self.config.seed,
            "elapsed_seconds": self.elapsed_seconds,
            "versions": self.versions,
            "row_count": len(self.rows),
        }

    def write_manifest(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.manifest(), fh, indent=2)
            fh.write("\n")


def _versions() -> dict:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "kernel_backend": backend.BACKEND,
    }


def binomial_se(rate: float, n_outer: int) -> float:
    return float(np.sqrt(rate * (1.0 - rate) / n_outer))


def load_packaged_models() -> list:
    """The twelve ARMA(2,2) quadruples of the power study, from the
    packaged config file (see its provenance note)."""
    ref = importlib.resources.files("stableport.data") / "arma22_models.json"
    payload = json.loads(ref.read_text())
    return payload["models"]


def _rate_rows(cell_label: dict, counts: dict, config: ExperimentConfig) -> list:
    rows = []
    for s in config.statistics:
        for i, m in enumerate(config.lags):
            rate = counts[s][i] / config.N_outer
            rows.append(
                {
                    **cell_label,
                    "statistic": s,
                    "m": m,
                    "rate": rate,
                    "se": binomial_se(rate, config.N_outer),
                    "N_outer": config.N_outer,
                    "B": config.B,
                }
            )
    return rows


def _reject_counts(reports_by_stat: dict, config: ExperimentConfig, counts: dict):
    for s in config.statistics:
        for i, rep in enumerate(reports_by_stat[s]):
            if rep.p_value <= config.level:
                counts[s][i] += 1


def run_size_randomness(config: ExperimentConfig) -> ExperimentResult:
    """Null rejection rates of the randomness test on IID stable series."""
    start = time.perf_counter()
    rows = []
    n = int(config.n)
    for ci, alpha in enumerate(config.alpha):
        params = StableParams(alpha=alpha)
        counts = {s: np.zeros(len(config.lags), int) for s in config.statistics}
        for i in range(config.N_outer):
            rng = np.random.default_rng((config.seed, ci, i))
            x = sample_stable(params, n, rng)
            mc = McConfig(
                B=config.B, master_seed=(config.seed, ci, i, 1), lags=config.lags
            )
            reports = _mc_randomness(x, mc, config.statistics)
            _reject_counts(reports, config, counts)
        rows += _rate_rows({"alpha": alpha, "n": n}, counts, config)
    return ExperimentResult(rows, config, time.perf_counter() - start, _versions())


def run_size_diagnostic(config: ExperimentConfig) -> ExperimentResult:
    """Null rejection rates of the diagnostic test on correctly specified
    AR(1) models (default n = 100, Burg fitting)."""
    start = time.perf_counter()
    rows = []
    n = int(config.n) if not isinstance(config.n, (list, tuple)) else 100
    alpha = config.alpha[0]
    params = StableParams(alpha=alpha)
    for ci, phi in enumerate(config.phi):
        model = ArModel([phi])
        burn = default_burn_in(1)
        counts = {s: np.zeros(len(config.lags), int) for s in config.statistics}
        for i in range(config.N_outer):
            rng = np.random.default_rng((config.seed, ci, i))
            z = sample_stable(params, n + burn, rng)
            x = simulate_ar(model, z, burn)
            mc = McConfig(
                B=config.B,
                master_seed=(config.seed, ci, i, 1),
                lags=config.lags,
                fit_method=config.fit_method,
            )
            reports = _mc_diagnostic(x, 1, 0, mc, config.statistics)
            _reject_counts(reports, config, counts)
        rows += _rate_rows({"phi": phi, "alpha": alpha, "n": n}, counts, config)
    return ExperimentResult(rows, config, time.perf_counter() - start, _versions())


def run_power_diagnostic(config: ExperimentConfig) -> ExperimentResult:
    """Rejection rates when ARMA(2,2) data are misfitted as AR(1)."""
    start = time.perf_counter()
    rows = []
    models = config.models if config.models is not None else load_packaged_models()
    n = int(config.n) if not isinstance(config.n, (list, tuple)) else 100
    alpha = config.alpha[0]
    params = StableParams(alpha=alpha)
    for ci, spec in enumerate(models):
        model = ArmaModel(spec["phi"], spec["theta"])
        burn = default_burn_in(model.p, model.q)
        counts = {s: np.zeros(len(config.lags), int) for s in config.statistics}
        for i in range(config.N_outer):
            rng = np.random.default_rng((config.seed, ci, i))
            z = sample_stable(params, n + burn, rng)
            x = simulate_arma(model, z, burn)
            mc = McConfig(
                B=config.B,
                master_seed=(config.seed, ci, i, 1),
                lags=config.lags,
                fit_method=config.fit_method,
            )
            reports = _mc_diagnostic(x, 1, 0, mc, config.statistics)
            _reject_counts(reports, config, counts)
        label = {
            "model": ci + 1,
            "phi": " ".join(map(str, spec["phi"])),
            "theta": " ".join(map(str, spec["theta"])),
            "alpha": alpha,
            "n": n,
        }
        rows += _rate_rows(label, counts, config)
    return ExperimentResult(rows, config, time.perf_counter() - start, _versions())


def _quantile_rows(source: str, n_label, values: np.ndarray) -> list:
    qs = np.quantile(values, QUANTILE_PROBS)
    return [
        {"source": source, "n": n_label, "prob": p, "quantile": float(q)}
        for p, q in zip(QUANTILE_PROBS, qs)
    ]


def run_convergence_figure(config: ExperimentConfig) -> ExperimentResult:
    """Plot-ready empirical quantiles of a finite-sample statistic against
    its simulated asymptotic reference.

    mode = "statistic": the determinant statistic at lag m for IID stable
    series across the n grid, plus the asymptotic reference quantiles.

    mode = "residual": the scaled lag-1 residual ACF of a Burg AR(1) fit,
    plus two references — the error-ACF limit W_1 and the residual-ACF
    limit (the first coordinate of (I - Q) W).  The gap between them is the
    slow-convergence phenomenon the figure shows.
    """
    start = time.perf_counter()
    alpha = config.alpha[0]
    phi = config.phi[0] if config.phi else 0.5
    rows = []
    for ci, n in enumerate(config.n_grid):
        values = np.empty(config.N_outer)
        for i in range(config.N_outer):
            rng = np.random.default_rng((config.seed, ci, i))
            if config.mode == "statistic":
                x = sample_stable(StableParams(alpha=alpha), n, rng)
                values[i] = d_hat_statistic(sample_acf(x, config.m), alpha)
            else:
                model = ArModel([phi])
                burn = default_burn_in(1)
                z = sample_stable(StableParams(alpha=alpha), n + burn, rng)
                x = simulate_ar(model, z, burn)
                fit = fit_burg(x, 1)
                r1 = backend.acf_raw(fit.residuals, 1)[0]
                values[i] = scaling_factor(fit.residuals.size, alpha) ** 0.5 * r1
        rows += _quantile_rows("empirical", n, values)
    if config.mode == "statistic":
        ref = simulate_reference(
            "randomness_dhat",
            alpha,
            config.m,
            sim_count=config.ref_sim_count,
            seed=(config.seed, 10**6),
        )
        rows += _quantile_rows("asymptotic", "limit", ref.draws)
    else:
        draws_w1 = np.empty(config.ref_sim_count)
        m_proj = max(config.m, 2)
        proj = diagnostic_projection(ArModel([phi]), m_proj)
        draws_res = np.empty(config.ref_sim_count)
        for i in range(config.ref_sim_count):
            rng = np.random.default_rng((config.seed, 10**6, i))
            w = sample_limit_vector(alpha, m_proj, rng)
            draws_w1[i] = w[0]
            draws_res[i] = (proj.complement @ w)[0]
        rows += _quantile_rows("error_asymptotic", "limit", draws_w1)
        rows += _quantile_rows("residual_asymptotic", "limit", draws_res)
    return ExperimentResult(rows, config, time.perf_counter() - start, _versions())


_RUNNERS = {
    "size_randomness": run_size_randomness,
    "size_diagnostic": run_size_diagnostic,
    "power_diagnostic": run_power_diagnostic,
    "convergence_figure": run_convergence_figure,
}


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    return _RUNNERS[config.experiment](config)
