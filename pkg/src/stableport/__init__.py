"""Portmanteau tests for time series with infinite-variance stable
Paretian innovations: scaled Box-Pierce and determinant statistics, their
simulated limit distributions, and finite-sample-exact Monte-Carlo
p-values for randomness testing and AR/ARMA diagnostic checking.
"""

from .correlation import (
    CorrelationSequence,
    PacfSequence,
    det_root_via_pacf,
    durbin_levinson,
    mean_corrected_acf,
    sample_acf,
)
from .dataio import SeriesFile, ingest
from .errors import DataError, DegeneracyError, FitError, StableportError
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    run_convergence_figure,
    run_experiment,
    run_power_diagnostic,
    run_size_diagnostic,
    run_size_randomness,
)
from .models import (
    ArmaModel,
    ArModel,
    DiagnosticProjection,
    FitResult,
    ar_equivalent,
    diagnostic_projection,
    fit_arma_css,
    fit_burg,
    fit_least_squares,
    impulse_responses,
    residual_acf,
    simulate_ar,
    simulate_arma,
)
from .montecarlo import McConfig, mc_test_diagnostic, mc_test_randomness
from .portmanteau import (
    PortmanteauReport,
    ReferenceDistribution,
    asymptotic_p_value,
    chi_square_p_value,
    d_hat_statistic,
    q_bp_statistic,
    q_lb_statistic,
    simulate_reference,
)
from .stable import (
    StableEstimate,
    StableParams,
    c_alpha,
    characteristic_function,
    estimate_mcculloch,
    sample_limit_vector,
    sample_stable,
)

__version__ = "0.1.0"

__all__ = [
    "ArModel",
    "ArmaModel",
    "CorrelationSequence",
    "DataError",
    "DegeneracyError",
    "DiagnosticProjection",
    "ExperimentConfig",
    "ExperimentResult",
    "FitError",
    "FitResult",
    "McConfig",
    "PacfSequence",
    "PortmanteauReport",
    "ReferenceDistribution",
    "SeriesFile",
    "StableEstimate",
    "StableParams",
    "StableportError",
    "ar_equivalent",
    "asymptotic_p_value",
    "c_alpha",
    "characteristic_function",
    "chi_square_p_value",
    "d_hat_statistic",
    "det_root_via_pacf",
    "diagnostic_projection",
    "durbin_levinson",
    "estimate_mcculloch",
    "fit_arma_css",
    "fit_burg",
    "fit_least_squares",
    "impulse_responses",
    "ingest",
    "mc_test_diagnostic",
    "mc_test_randomness",
    "mean_corrected_acf",
    "q_bp_statistic",
    "q_lb_statistic",
    "residual_acf",
    "run_convergence_figure",
    "run_experiment",
    "run_power_diagnostic",
    "run_size_diagnostic",
    "run_size_randomness",
    "sample_acf",
    "sample_limit_vector",
    "sample_stable",
    "simulate_ar",
    "simulate_arma",
    "simulate_reference",
]
