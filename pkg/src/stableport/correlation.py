"""Sample autocorrelation and partial autocorrelation machinery.

The raw ACF divides every lagged cross-product by the same full-sample sum
of squares, which keeps |r_k| <= 1 and the implied Toeplitz matrix positive
semidefinite.  The determinant root of the order-(m+1) autocorrelation
matrix is always computed through the partial-autocorrelation product
identity, never through a dense determinant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DegeneracyError

__all__ = [
    "CorrelationSequence",
    "PacfSequence",
    "sample_acf",
    "mean_corrected_acf",
    "durbin_levinson",
    "det_root_via_pacf",
]

_KINDS = ("raw", "mean_corrected", "residual")


@dataclass(frozen=True)
class CorrelationSequence:
    """Autocorrelations at lags 1..m plus provenance.

    The lag-0 value is implicitly 1 and never stored.
    """

    values: np.ndarray
    n: int
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.values.ndim != 1 or self.values.size < 1:
            raise ValueError("values must be a nonempty 1-d array")
        if self.m >= self.n:
            raise ValueError(f"need m < n, got m={self.m}, n={self.n}")
        if np.any(np.abs(self.values) > 1.0 + 1e-12):
            raise ValueError("autocorrelations must lie in [-1, 1]")

    @property
    def m(self) -> int:
        return self.values.size

    def truncated(self, m: int) -> "CorrelationSequence":
        """The same sequence restricted to lags 1..m."""
        if not 1 <= m <= self.m:
            raise ValueError(f"cannot truncate to m={m} from m={self.m}")
        return CorrelationSequence(self.values[:m], self.n, self.kind)


@dataclass(frozen=True)
class PacfSequence:
    """Partial autocorrelations at lags 1..m."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    @property
    def m(self) -> int:
        return self.values.size


def sample_acf(series, m: int) -> CorrelationSequence:
    """Raw sample ACF: r_k = sum_{t<=n-k} X_t X_{t+k} / sum_t X_t^2."""
    x = np.asarray(series, dtype=float)
    n = x.size
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    if not np.any(x != 0.0):
        raise ValueError("all-zero series has undefined autocorrelations")
    return CorrelationSequence(backend.acf_raw(x, m), n, "raw")


def mean_corrected_acf(series, m: int) -> CorrelationSequence:
    """Mean-corrected sample ACF: the raw ACF of deviations from the mean."""
    x = np.asarray(series, dtype=float)
    n = x.size
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    centered = x - x.mean()
    if not np.any(centered != 0.0):
        raise ValueError("constant series has undefined mean-corrected ACF")
    return CorrelationSequence(backend.acf_raw(centered, m), n, "mean_corrected")


def durbin_levinson(acf: CorrelationSequence) -> PacfSequence:
    """Partial autocorrelations by the Durbin-Levinson recursion.

    Raises :class:`DegeneracyError` when a reflection coefficient reaches
    unit magnitude (autocorrelation matrix not positive definite).
    """
    pacf, ok = backend.durbin_levinson(acf.values)
    if not ok:
        raise DegeneracyError(
            "unit partial autocorrelation: autocorrelation matrix is singular"
        )
    return PacfSequence(pacf)


def det_root_via_pacf(acf: CorrelationSequence) -> float:
    """m-th root of the determinant of the order-(m+1) autocorrelation
    matrix, via the product identity

        |R|^(1/m) = prod_{i=1..m} (1 - pi_i^2)^((m+1-i)/m).
    """
    pacf = durbin_levinson(acf).values
    return _det_root_from_pacf(pacf, pacf.size)


def _det_root_from_pacf(pacf: np.ndarray, m: int) -> float:
    weights = (m + 1 - np.arange(1, m + 1)) / m
    return float(np.prod((1.0 - pacf[:m] ** 2) ** weights))
