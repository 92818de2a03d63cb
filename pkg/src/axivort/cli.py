"""Command-line entry points.

Subcommands:
    run                integrate a configured scenario, writing series.csv,
                       snapshots and a resolved-config echo to the output
                       directory
    verify-kernel      oracle suite for the ring kernel (quadrature
                       equivalence, monotonicity, Legendre, asymptotics)
    verify-identities  two-sided evaluation of the moment and mass
                       identities on a seeded config or a snapshot
    fit                log-log slope of a series.csv column over a window

Exit status: 0 clean, 1 verification failure or aborted run, 2 bad usage
or configuration.  Thread count comes from --threads or AXISYM_THREADS.
"""

import argparse
import csv
import math
import os
import sys

import numpy as np

from .config import default_config, load_config, seed_from_config
from .diagnostics import fit_exponent, record_columns, record_to_row
from .errors import ConfigError, DomainError, QuadratureError
from .particles import load_snapshot, save_snapshot
from .verify import (
    IDENTITY_TOLS,
    KERNEL_TOLS,
    identities_report,
    kernel_report,
    kernel_report_header,
)


def _fmt(x):
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _parse_tols(pairs, known):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        name, val = item.split("=", 1)
        if name not in known:
            raise ConfigError(
                f"--tol {name}: unknown tolerance; expected one of {sorted(known)}"
            )
        out[name] = float(val)
    return out


def _apply_threads(threads):
    if threads is None:
        env = os.environ.get("AXISYM_THREADS")
        threads = int(env) if env else None
    if threads is not None:
        import numba

        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def cmd_run(args):
    cfg = load_config(args.config)
    if args.out:
        cfg.out_dir = args.out
    if args.deterministic:
        cfg.deterministic = True
    if args.threads:
        cfg.threads = args.threads
    _apply_threads(cfg.threads)

    from . import dynamics

    out_dir = cfg.out_dir
    snap_dir = os.path.join(out_dir, "snapshots")
    os.makedirs(snap_dir, exist_ok=True)
    cfg.to_json(os.path.join(out_dir, "config_echo.json"))

    cols = record_columns(cfg.k_list, cfg.p_list, cfg.R_list)
    series_path = os.path.join(out_dir, "series.csv")
    with open(series_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)

        def on_record(rec):
            writer.writerow(
                [_fmt(v) for v in record_to_row(rec, cfg.k_list, cfg.p_list, cfg.R_list)]
            )

        def on_snapshot(state, step):
            save_snapshot(
                state.system,
                state.time,
                os.path.join(snap_dir, f"snap_{step:06d}.txt"),
            )

        result = dynamics.run(cfg, on_record=on_record, on_snapshot=on_snapshot)

    print(f"run {result.status}: {result.n_records} records -> {series_path}")
    if result.message:
        print(result.message)
    return 0 if result.status == "completed" else 1


def cmd_verify_kernel(args):
    tols = _parse_tols(args.tol, KERNEL_TOLS)
    ok, rows = kernel_report(tols=tols)
    print(kernel_report_header())
    for row in rows:
        print(row.format())
    print("verify-kernel:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_verify_identities(args):
    if bool(args.config) == bool(args.snapshot):
        raise ConfigError("give exactly one of --config or --snapshot")
    tols = _parse_tols(args.tol, IDENTITY_TOLS)
    _apply_threads(args.threads)
    if args.config:
        cfg = load_config(args.config)
        system, t = seed_from_config(cfg)
    else:
        system, t = load_snapshot(args.snapshot)
    try:
        ok, rows = identities_report(
            system, tols=tols, fast=not args.deterministic
        )
    except QuadratureError as exc:
        print(f"verify-identities: quadrature did not converge: {exc}")
        return 1
    print(f"identity residuals at t = {t:g} (N = {system.n}, delta = {system.delta:g})")
    for row in rows:
        print(row.format())
    print("verify-identities:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_fit(args):
    t_lo, t_hi = args.window
    with open(args.series, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if args.quantity not in header:
            raise ConfigError(
                f"column {args.quantity!r} not in {args.series} (have {header})"
            )
        it = header.index(args.quantity)
        tt, qq = [], []
        for line in reader:
            tt.append(float(line[0]))
            qq.append(float(line[it]))
    t = np.asarray(tt)
    q = np.asarray(qq)
    keep = np.isfinite(q)
    slope, resid = fit_exponent(t[keep], q[keep], (t_lo, t_hi))
    print(f"log-log slope of {args.quantity} over t in [{t_lo:g}, {t_hi:g}]: "
          f"{slope:.4f} (rms residual {resid:.2e})")
    if args.quantity.startswith("p2"):
        print("reference bracket: lower trend ~ t/log t (slope just under 1), "
              "upper bound slope 2 (quadratic growth ceiling)")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="axivort", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="integrate a configured scenario")
    run_p.add_argument("--config", required=True, help="JSON run configuration")
    run_p.add_argument("--out", help="output directory (overrides config)")
    run_p.add_argument("--deterministic", action="store_true")
    run_p.add_argument("--threads", type=int)
    run_p.set_defaults(fn=cmd_run)

    vk = sub.add_parser("verify-kernel", help="kernel oracle suite")
    vk.add_argument("--tol", action="append", metavar="NAME=VALUE")
    vk.set_defaults(fn=cmd_verify_kernel)

    vi = sub.add_parser("verify-identities", help="two-sided identity suite")
    vi.add_argument("--config", help="seed this configuration")
    vi.add_argument("--snapshot", help="or load this snapshot")
    vi.add_argument("--tol", action="append", metavar="NAME=VALUE")
    vi.add_argument("--deterministic", action="store_true")
    vi.add_argument("--threads", type=int)
    vi.set_defaults(fn=cmd_verify_identities)

    fit_p = sub.add_parser("fit", help="log-log slope of a series column")
    fit_p.add_argument("--series", required=True)
    fit_p.add_argument("--quantity", required=True)
    fit_p.add_argument("--window", nargs=2, type=float, required=True,
                       metavar=("T_LO", "T_HI"))
    fit_p.set_defaults(fn=cmd_fit)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
