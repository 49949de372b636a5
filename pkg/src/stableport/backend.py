"""Kernel backend selection.

The hot inner loops (stable sampling transform, autocorrelations, the
Durbin-Levinson and Burg recursions, AR/ARMA filtering) exist twice: a
numba ``@njit`` version and a vectorised numpy/scipy fallback.  The numba
path is used when numba imports cleanly and the environment variable
``STABLEPORT_NO_NUMBA`` is not set to ``1``/``true``/``yes``.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

from __future__ import annotations

import os


def _numba_disabled() -> bool:
    return os.environ.get("STABLEPORT_NO_NUMBA", "").strip().lower() in {
        "1",
        "true",
        "yes",
    }


USE_NUMBA = False
if not _numba_disabled():
    try:
        from . import _kernels_numba as kernels  # noqa: F401

        USE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        from . import _kernels_numpy as kernels  # noqa: F401
else:
    from . import _kernels_numpy as kernels  # noqa: F401

BACKEND = "numba" if USE_NUMBA else "numpy"

cms_transform = kernels.cms_transform
acf_raw = kernels.acf_raw
durbin_levinson = kernels.durbin_levinson
burg = kernels.burg
ar_simulate = kernels.ar_simulate
arma_simulate = kernels.arma_simulate
ar_residuals = kernels.ar_residuals
arma_residuals = kernels.arma_residuals
