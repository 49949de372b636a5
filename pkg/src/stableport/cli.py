"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 computation error.
Every emitted report carries the seed, replicate count, tail index, and
statistic name, so each number is exactly reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .dataio import SeriesFile, ingest
from .errors import DataError, StableportError
from .experiments import ExperimentConfig, run_experiment
from .models import diagnostic_projection
from .montecarlo import McConfig, _mc_diagnostic, mc_test_diagnostic, mc_test_randomness
from .portmanteau import (
    PortmanteauReport,
    chi_square_p_value,
    q_lb_statistic,
    simulate_reference,
)
from .correlation import sample_acf, mean_corrected_acf
from .portmanteau import q_bp_statistic, d_hat_statistic
from .stable import StableParams, estimate_mcculloch, sample_stable

__all__ = ["main", "console_main"]

_STAT_NAMES = {"qbp": "q_bp", "dhat": "d_hat", "qlb": "q_lb"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parse_lags(text: str) -> tuple:
    try:
        lags = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise UsageError(f"invalid --lags value {text!r}") from None
    if not lags or any(m < 1 for m in lags):
        raise UsageError("--lags must be positive integers")
    return lags


def _parse_order(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise UsageError("--order must be p or p,q")
    try:
        p = int(parts[0])
        q = int(parts[1]) if len(parts) == 2 else 0
    except ValueError:
        raise UsageError(f"invalid --order value {text!r}") from None
    return p, q


def _resolve_seed(seed) -> int:
    """Use the given seed, or generate one and announce it on stderr."""
    if seed is not None:
        return seed
    generated = int(np.random.SeedSequence().entropy % 2**31)
    print(f"seed: {generated}", file=sys.stderr, flush=True)
    return generated


def _emit_reports(reports, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json-lines":
        for rep in reports:
            print(json.dumps(rep.to_dict()), file=out)
        return
    header = f"{'statistic':<10}{'m':>4}{'value':>14}{'alpha':>8}{'p_value':>9}  {'method':<21}{'B':>7}  seed"
    print(header, file=out)
    for rep in reports:
        print(
            f"{rep.statistic:<10}{rep.m:>4}{rep.value:>14.4f}"
            f"{rep.scaling_alpha:>8.3f}{rep.p_value:>9.4f}  "
            f"{rep.p_method:<21}{rep.replications:>7}  {rep.seed}",
            file=out,
        )


def _load_series(args) -> np.ndarray:
    return ingest(SeriesFile(args.file, args.column, args.transform))


def _add_series_args(p: _Parser) -> None:
    p.add_argument("file", help="delimited data file, or - for stdin")
    p.add_argument("--column", default=0, help="column index or header name")
    p.add_argument("--transform", choices=("none", "log_returns"), default="none")


def _add_test_args(p: _Parser) -> None:
    p.add_argument("--lags", default="5,10,20", help="comma-separated lags")
    p.add_argument("--stat", choices=sorted(_STAT_NAMES), default="dhat")
    p.add_argument("--B", type=int, default=1000, dest="B")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None, help="tail-index override")
    p.add_argument("--format", choices=("table", "json-lines"), default="table")


def build_parser() -> _Parser:
    parser = _Parser(prog="stableport", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write an IID stable series to stdout")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("estimate-stable", help="quantile estimate of (alpha, beta)")
    _add_series_args(p)
    p.add_argument("--format", choices=("table", "json-lines"), default="table")

    p = sub.add_parser("test-randomness", help="portmanteau randomness test")
    _add_series_args(p)
    _add_test_args(p)
    p.add_argument(
        "--method",
        choices=("mc", "asymptotic", "chi2"),
        default="mc",
        help="mc: Monte-Carlo; asymptotic: simulated limit law; chi2: q_lb only",
    )

    p = sub.add_parser("diagnose", help="portmanteau diagnostic of a fitted model")
    _add_series_args(p)
    _add_test_args(p)
    p.add_argument("--order", required=True, help="model order p or p,q")
    p.add_argument("--fit", choices=("burg", "ls", "css"), default="burg")
    p.add_argument(
        "--method", choices=("mc", "asymptotic", "chi2"), default="mc"
    )

    p = sub.add_parser("experiment", help="run an experiment config file")
    p.add_argument("config", help="JSON experiment config")
    p.add_argument("--out", default=None, help="output prefix (.csv + .manifest.json)")

    p = sub.add_parser("reference", help="simulated asymptotic quantiles")
    p.add_argument(
        "--kind",
        choices=("randomness_qbp", "randomness_dhat", "diagnostic_qbp", "diagnostic_dhat"),
        required=True,
    )
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sims", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--phi", default=None, help="comma list, diagnostic kinds only")
    p.add_argument("--theta", default=None, help="comma list, diagnostic kinds only")
    return parser


def _cmd_simulate(args) -> int:
    seed = _resolve_seed(args.seed)
    params = StableParams(args.alpha, args.sigma, args.beta, args.mu)
    x = sample_stable(params, args.n, np.random.default_rng(seed))
    for v in x:
        print(repr(float(v)))
    return 0


def _cmd_estimate_stable(args) -> int:
    est = estimate_mcculloch(_load_series(args))
    if args.format == "json-lines":
        print(json.dumps({"alpha_hat": est.alpha_hat, "beta_hat": est.beta_hat}))
    else:
        print(f"alpha_hat {est.alpha_hat:.4f}")
        print(f"beta_hat  {est.beta_hat:.4f}")
    return 0


def _observed_randomness_reports(x, args, lags, stat, seed):
    """Non-Monte-Carlo p-value paths for the randomness test."""
    alpha = args.alpha if args.alpha is not None else estimate_mcculloch(x).alpha_hat
    acf_fn = mean_corrected_acf if alpha > 1.0 else sample_acf
    acf = acf_fn(x, max(lags))
    reports = []
    for m in lags:
        trunc = acf.truncated(m)
        if stat == "q_lb":
            value = q_lb_statistic(trunc)
        elif stat == "q_bp":
            value = q_bp_statistic(trunc, alpha)
        else:
            value = d_hat_statistic(trunc, alpha)
        if args.method == "chi2":
            if stat != "q_lb":
                raise UsageError("--method chi2 is only valid with --stat qlb")
            p, p_method, reps = chi_square_p_value(value, m), "chi_square", 0
        else:
            if stat == "q_lb":
                raise UsageError("--method asymptotic requires --stat qbp or dhat")
            kind = "randomness_qbp" if stat == "q_bp" else "randomness_dhat"
            ref = simulate_reference(kind, alpha, m, sim_count=args.B, seed=(seed, m))
            from .portmanteau import asymptotic_p_value

            p, p_method, reps = (
                asymptotic_p_value(value, ref),
                "simulated_asymptotic",
                args.B,
            )
        reports.append(
            PortmanteauReport(stat, m, value, alpha, p, p_method, reps, seed)
        )
    return reports


def _cmd_test_randomness(args) -> int:
    x = _load_series(args)
    lags = _parse_lags(args.lags)
    stat = _STAT_NAMES[args.stat]
    seed = _resolve_seed(args.seed)
    if args.method == "mc":
        config = McConfig(
            B=args.B,
            master_seed=seed,
            statistic=stat,
            lags=lags,
            alpha_override=args.alpha,
        )
        reports = mc_test_randomness(x, config)
    else:
        reports = _observed_randomness_reports(x, args, lags, stat, seed)
    _emit_reports(reports, args.format)
    return 0


def _cmd_diagnose(args) -> int:
    x = _load_series(args)
    lags = _parse_lags(args.lags)
    stat = _STAT_NAMES[args.stat]
    seed = _resolve_seed(args.seed)
    p_order, q_order = _parse_order(args.order)
    fit_method = {"burg": "burg", "ls": "least_squares", "css": "css"}[args.fit]
    config = McConfig(
        B=args.B,
        master_seed=seed,
        statistic=stat,
        lags=lags,
        fit_method=fit_method,
        alpha_override=args.alpha,
    )
    if args.method == "mc":
        reports = mc_test_diagnostic(x, p_order, q_order, config)
    else:
        reports = _diagnose_non_mc(x, p_order, q_order, config, args, stat, seed)
    _emit_reports(reports, args.format)
    return 0


def _diagnose_non_mc(x, p_order, q_order, config, args, stat, seed):
    """Chi-square or simulated-asymptotic p-values on the observed fit."""
    from .montecarlo import _fit
    from .portmanteau import asymptotic_p_value
    from .models import residual_acf

    fit = _fit(x, p_order, q_order, config.fit_method)
    alpha = args.alpha if args.alpha is not None else fit.alpha_hat
    if alpha is None:
        raise StableportError("too few residuals to estimate the tail index")
    reports = []
    for m in lags_sorted(config.lags):
        acf = residual_acf(fit, m)
        if stat == "q_lb":
            value = q_lb_statistic(acf)
        elif stat == "q_bp":
            value = q_bp_statistic(acf, alpha)
        else:
            value = d_hat_statistic(acf, alpha)
        if args.method == "chi2":
            if stat != "q_lb":
                raise UsageError("--method chi2 is only valid with --stat qlb")
            dof = m - p_order - q_order
            if dof < 1:
                raise UsageError(f"lag {m} leaves no chi-square degrees of freedom")
            p, p_method, reps = chi_square_p_value(value, dof), "chi_square", 0
        else:
            if stat == "q_lb":
                raise UsageError("--method asymptotic requires --stat qbp or dhat")
            proj = diagnostic_projection(fit.model, m)
            kind = "diagnostic_qbp" if stat == "q_bp" else "diagnostic_dhat"
            ref = simulate_reference(
                kind, alpha, m, projection=proj, sim_count=config.B, seed=(seed, m)
            )
            p, p_method, reps = (
                asymptotic_p_value(value, ref),
                "simulated_asymptotic",
                config.B,
            )
        reports.append(
            PortmanteauReport(stat, m, value, alpha, p, p_method, reps, seed)
        )
    return reports


def lags_sorted(lags) -> tuple:
    return tuple(sorted(lags))


def _cmd_experiment(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    result = run_experiment(config)
    if args.out:
        result.write_csv(args.out + ".csv")
        result.write_manifest(args.out + ".manifest.json")
        print(f"wrote {args.out}.csv and {args.out}.manifest.json")
    else:
        for row in result.rows:
            print(json.dumps(row))
    return 0


def _cmd_reference(args) -> int:
    seed = _resolve_seed(args.seed)
    projection = None
    if args.kind.startswith("diagnostic"):
        if args.phi is None:
            raise UsageError(f"--kind {args.kind} requires --phi (and --theta for MA)")
        from .models import ArmaModel, ArModel

        phi = [float(v) for v in args.phi.split(",")]
        if args.theta:
            theta = [float(v) for v in args.theta.split(",")]
            model = ArmaModel(phi, theta)
        else:
            model = ArModel(phi)
        projection = diagnostic_projection(model, args.m)
    elif args.phi is not None or args.theta is not None:
        raise UsageError("--phi/--theta only apply to diagnostic kinds")
    ref = simulate_reference(
        args.kind, args.alpha, args.m, projection=projection,
        sim_count=args.sims, seed=seed,
    )
    probs = (0.05, 0.10, 0.30, 0.50, 0.70, 0.90, 0.95, 0.975, 0.99)
    print(f"{'prob':>6}  quantile")
    for prob, q in zip(probs, ref.quantiles(probs)):
        print(f"{prob:>6.3f}  {q:.6f}")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "estimate-stable": _cmd_estimate_stable,
    "test-randomness": _cmd_test_randomness,
    "diagnose": _cmd_diagnose,
    "experiment": _cmd_experiment,
    "reference": _cmd_reference,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: data: {exc}", file=sys.stderr)
        return 2
    except (StableportError, ValueError) as exc:
        print(f"error: computation: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    raise SystemExit(main())
