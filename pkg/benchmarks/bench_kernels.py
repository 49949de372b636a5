"""Benchmark the compiled kernels against the pure-numpy fallbacks.

Run:  python3 benchmarks/bench_kernels.py [--n 100000] [--repeats 20]

Imports both kernel modules directly, so it works regardless of the
STABLEPORT_NO_NUMBA environment flag.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stableport import _kernels_numpy


def _load_numba():
    try:
        from stableport import _kernels_numba

        return _kernels_numba
    except ImportError:
        return None


def _time(fn, args, repeats):
    fn(*args)  # warm-up (also triggers JIT compilation)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100_000)
    parser.add_argument("--m", type=int, default=30)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x = rng.standard_cauchy(args.n)
    v = rng.uniform(-np.pi / 2, np.pi / 2, args.n)
    w = rng.standard_exponential(args.n)
    r = _kernels_numpy.acf_raw(x, args.m)
    phi = np.array([0.5, -0.2])
    theta = np.array([0.3])

    cases = [
        ("cms_transform", (v, w, 1.5, 0.0)),
        ("acf_raw", (x, args.m)),
        ("durbin_levinson", (r,)),
        ("burg", (x, 5)),
        ("ar_simulate", (phi, x)),
        ("arma_simulate", (phi, theta, x)),
        ("ar_residuals", (phi, x)),
        ("arma_residuals", (phi, theta, x)),
    ]

    numba_mod = _load_numba()
    header = f"{'kernel':<16}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>9}"
    print(f"n = {args.n}, m = {args.m}, best of {args.repeats}")
    print(header)
    for name, call_args in cases:
        t_np = _time(getattr(_kernels_numpy, name), call_args, args.repeats)
        if numba_mod is None:
            print(f"{name:<16}{t_np * 1e3:>12.3f}{'n/a':>12}{'':>9}")
            continue
        t_nb = _time(getattr(numba_mod, name), call_args, args.repeats)
        print(
            f"{name:<16}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}"
            f"{t_np / t_nb:>8.1f}x"
        )


if __name__ == "__main__":
    main()
