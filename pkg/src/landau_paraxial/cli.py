"""Command-line front end.

    landau-paraxial <spectrum|mode|propagate|gouy|validate> --config <path>
                    [--jobs N] [--out <dir>]

Exit codes: 0 success, 2 numerical-acceptance failure, 3 physics-guard
failure (beam hit the wall), 64 usage or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__, acceptance, pipeline
from .config import RunConfig, parse_config
from .errors import ConfigError, LandauParaxialError, WallContactError
from .gouy import FitModel, write_fit_csv
from .grid import dump_field, norm
from .modes import Physicality, physicality_check
from .propagate import write_record_csv, write_snapshots
from .spectrum import spectrum_report, write_spectrum_csv

EXIT_OK = 0
EXIT_ACCEPTANCE = 2
EXIT_GUARD = 3
EXIT_USAGE = 64

SPECTRUM_REL_GATE = 1e-5
GOUY_MAGNETIC_REL_GATE = 1e-3
GOUY_FREE_DEV_GATE = 1e-2
SPECTRUM_LEVELS = 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the exit-code contract
    # reserves 2 for numerical failures, so route usage errors to 64.
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="landau-paraxial", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "numeric vs analytic transverse eigenvalues"),
        ("mode", "sample an analytic mode and dump it"),
        ("propagate", "run the Crank-Nicolson propagation"),
        ("gouy", "propagate and fit the Gouy-phase law"),
        ("validate", "run the full acceptance suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the run configuration")
        p.add_argument("--out", default=None, help="output directory (overrides output.dir)")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel workers for independent validate cases")
    return parser


def _out_dir(cfg: RunConfig, override) -> str:
    out = override if override is not None else cfg.output_dir
    os.makedirs(out, exist_ok=True)
    return out


def cmd_spectrum(cfg: RunConfig, out: str) -> int:
    if cfg.b <= 0.0:
        raise ConfigError("spectrum requires a magnetic field (b > 0)", key="b")
    report = spectrum_report(pipeline.context_for(cfg), cfg.ell, SPECTRUM_LEVELS,
                             pipeline.grid_for(cfg), cfg.pz)
    path = os.path.join(out, "spectrum.csv")
    write_spectrum_csv(report, path)
    print(f"spectrum: {len(report.rows)} levels, max rel err {report.max_rel_err:.3e}, "
          f"spacings decreasing: {report.spacings_decreasing} -> {path}")
    return EXIT_OK if report.max_rel_err < SPECTRUM_REL_GATE else EXIT_ACCEPTANCE


def cmd_mode(cfg: RunConfig, out: str) -> int:
    field = pipeline.mode_field(cfg)
    flag = physicality_check(pipeline.quantum_numbers_for(cfg), pipeline.particle_for(cfg))
    if flag is Physicality.UNPHYSICAL_ROTATION:
        print("warning: unphysical rotation direction for this species; "
              "computing anyway", file=sys.stderr)
    path = os.path.join(out, "mode.dat")
    dump_field(field, path)
    print(f"mode: norm = {norm(field):.12f}, physicality = {flag.value} -> {path}")
    return EXIT_OK


def cmd_propagate(cfg: RunConfig, out: str) -> int:
    record = pipeline.run_propagation(cfg)
    path = os.path.join(out, "record.csv")
    write_record_csv(record, path)
    snap_paths = write_snapshots(record, out)
    if record.wall_warning:
        print(f"warning: boundary amplitude reached {record.max_wall_ratio:.3e} "
              "of peak (soft threshold 1e-8)", file=sys.stderr)
    final_overlap = abs(record.overlap[-1])
    print(f"propagate: {record.params.n_steps} steps to z = {record.params.z_max:g}, "
          f"final norm {record.norm[-1]:.12f}, final |overlap| {final_overlap:.12f}, "
          f"{len(snap_paths)} snapshots -> {path}")
    return EXIT_OK


def cmd_gouy(cfg: RunConfig, out: str) -> int:
    record, fit = pipeline.run_gouy(cfg)
    write_record_csv(record, os.path.join(out, "record.csv"))
    path = os.path.join(out, "gouy.csv")
    write_fit_csv(fit, path)
    if fit.model is FitModel.LINEAR:
        passed = fit.rel_slope_error < GOUY_MAGNETIC_REL_GATE
        print(f"gouy: slope {fit.fitted_slope:.8e} vs analytic {fit.analytic_rate:.8e} "
              f"(rel err {fit.rel_slope_error:.3e}) -> {path}")
    else:
        passed = fit.max_abs_dev < GOUY_FREE_DEV_GATE
        print(f"gouy: max deviation from arctan law {fit.max_abs_dev:.3e} rad "
              f"(amplitude {fit.fitted_slope:.6f} vs {fit.analytic_rate:g}) -> {path}")
    return EXIT_OK if passed else EXIT_ACCEPTANCE


def cmd_validate(cfg: RunConfig, out: str, jobs: int) -> int:
    results = acceptance.run_all(cfg, jobs=jobs)
    print(acceptance.format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_ACCEPTANCE


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = parse_config(args.config)
        out = _out_dir(cfg, args.out)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out)
        if args.command == "mode":
            return cmd_mode(cfg, out)
        if args.command == "propagate":
            return cmd_propagate(cfg, out)
        if args.command == "gouy":
            return cmd_gouy(cfg, out)
        return cmd_validate(cfg, out, args.jobs)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WallContactError as exc:
        print(f"guard failure: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except LandauParaxialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
