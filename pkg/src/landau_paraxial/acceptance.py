"""Acceptance suite: every numbered criterion as a self-contained check.

The same checks back `landau-paraxial validate` and tests/test_acceptance.py.
Propagation-heavy criteria take their stepping plan from the run config so a
deliberately degraded config (for example prop.n_steps cut 100x) fails the
phase-law criterion instead of silently passing.
"""

from __future__ import annotations

import filecmp
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig, parse_config_text
from .errors import LandauParaxialError
from .grid import (Carrier, TransverseOperatorParams, dump_field,
                   make_radial_grid, radial_phase_curvature, sample_mode)
from .gouy import extract_gouy, extract_gouy_free, write_fit_csv
from .modes import (QuantumNumbers, eval_free_lg, eval_landau_radial,
                    free_vs_magnetic_rates, landau_energy, paraxial_pz, q_factor)
from .propagate import PropagationParams, propagate, write_record_csv, write_snapshots
from .spectrum import (build_transverse_matrix, lowest_eigenvalues,
                       spectrum_report, write_spectrum_csv)
from .units import Species, free_context, make_context

DEFAULT_CONFIG = parse_config_text("")

# Acceptance tolerances, pinned once.
SPECTRUM_REL_TOL = 1e-5
SPECTRUM_GROUND_ABS_TOL_OVER_B = 1e-7
CONVERGENCE_RATIO_RANGE = (3.5, 4.5)
SPACING_VALUE_TOL = 1e-6
NORM_DRIFT_TOL = 1e-10
OVERLAP_FLOOR = 1.0 - 1e-6
SLOPE_REL_TOL = 1e-4
GROUND_SLOPE_ABS_TOL = 1e-8
FREE_ZETA_DEV_TOL = 1e-2
FREE_R2_REL_TOL = 1e-3
FREE_CURVATURE_REL_TOL = 1e-2
CORRESPONDENCE_POINTWISE_TOL = 1e-14
CORRESPONDENCE_RATE_TOL = 1e-10


@dataclass(frozen=True)
class CriterionResult:
    cid: int
    name: str
    passed: bool
    details: str


def _result(cid, name, passed, details):
    return CriterionResult(cid, name, bool(passed), details)


def _magnetic_run(species, s_z, qn, cfg, b=0.01, k=1.0, stride=None):
    ctx = make_context(species, s_z, b, k)
    grid = make_radial_grid(8.0 * ctx.w_m, cfg.grid_n_points)
    field = sample_mode(lambda r: eval_landau_radial(qn, ctx.w_m, r),
                        qn.ell, grid, Carrier.PARAXIAL).normalized()
    params = PropagationParams(ctx, qn.ell, cfg.prop_z_max, cfg.prop_n_steps,
                               stride or cfg.prop_n_steps, qn)
    return propagate(field, params)


def criterion_spectrum(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """1: lowest 5 eigenvalues match q*b at b = 0.01 on the 8 w_m / 4096 grid."""
    b, k = 0.01, 1.0
    worst_rel = 0.0
    worst_ground = 0.0
    for ell in (0, 1, 2):
        for s_z in (-0.5, +0.5):
            ctx = make_context(Species.ELECTRON, s_z, b, k)
            grid = make_radial_grid(8.0 * ctx.w_m, 4096)
            matrix = build_transverse_matrix(
                grid, TransverseOperatorParams.from_context(ctx, ell))
            numeric = lowest_eigenvalues(matrix, 5)
            for n in range(5):
                analytic = q_factor(QuantumNumbers(n, ell), ctx.particle) * b
                if analytic == 0.0:
                    worst_ground = max(worst_ground, abs(numeric[n]))
                else:
                    worst_rel = max(worst_rel, abs(numeric[n] - analytic) / analytic)
    passed = (worst_rel < SPECTRUM_REL_TOL
              and worst_ground < SPECTRUM_GROUND_ABS_TOL_OVER_B * b)
    return _result(1, "spectrum-reproduction", passed,
                   f"max rel err {worst_rel:.3e} (tol {SPECTRUM_REL_TOL:.0e}), "
                   f"ground abs {worst_ground:.3e} (tol {SPECTRUM_GROUND_ABS_TOL_OVER_B * b:.0e})")


def criterion_convergence(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """2: halving h cuts the aggregate eigenvalue error by about 4."""
    b, k, ell, s_z = 0.01, 1.0, 1, -0.5
    ctx = make_context(Species.ELECTRON, s_z, b, k)
    errs = {}
    for n_points in (2048, 4096):
        grid = make_radial_grid(8.0 * ctx.w_m, n_points)
        matrix = build_transverse_matrix(
            grid, TransverseOperatorParams.from_context(ctx, ell))
        numeric = lowest_eigenvalues(matrix, 5)
        errs[n_points] = np.array(
            [numeric[n] - q_factor(QuantumNumbers(n, ell), ctx.particle) * b
             for n in range(5)])
    ratio = float(np.linalg.norm(errs[2048]) / np.linalg.norm(errs[4096]))
    lo, hi = CONVERGENCE_RATIO_RANGE
    return _result(2, "convergence-order", lo <= ratio <= hi,
                   f"error ratio {ratio:.3f} for h -> h/2 (window [{lo}, {hi}])")


def criterion_non_equidistance(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """3: level spacings strictly decrease; first two at b = 0.01 pinned."""
    particle = make_context(Species.ELECTRON, -0.5, 0.01, 1.0).particle
    ok = True
    details = []
    for b in (0.01, 0.1, 1.0):
        energies = [landau_energy(QuantumNumbers(n, 0), particle, 0.0, b)
                    for n in range(11)]
        spacings = np.diff(energies)
        if not np.all(spacings[1:] < spacings[:-1]):
            ok = False
            details.append(f"b={b}: spacings not strictly decreasing")
    e = [landau_energy(QuantumNumbers(n, 0), particle, 0.0, 0.01) for n in range(3)]
    d1, d2 = e[1] - e[0], e[2] - e[1]
    pinned = (abs(d1 - 0.0099505) < SPACING_VALUE_TOL
              and abs(d2 - 0.0098533) < SPACING_VALUE_TOL)
    if not pinned:
        ok = False
    details.append(f"delta1={d1:.7f}, delta2={d2:.7f} (tol {SPACING_VALUE_TOL:.0e})")
    return _result(3, "non-equidistance", ok, "; ".join(details))


def criterion_eigenmode_gouy(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """4: eigenmodes stay put and their overlap phase follows q b/(2k) z."""
    cases = [
        (Species.ELECTRON, -0.5, QuantumNumbers(0, 1), 0.01),
        (Species.ELECTRON, +0.5, QuantumNumbers(1, 0), 0.02),
        (Species.POSITRON, +0.5, QuantumNumbers(0, -1), 0.01),
    ]
    ok = True
    details = []
    for species, s_z, qn, expected_slope in cases:
        record = _magnetic_run(species, s_z, qn, cfg)
        drift = float(np.max(np.abs(record.norm - record.norm[0])))
        min_overlap = float(np.min(np.abs(record.overlap)))
        fit = extract_gouy(record)
        rel = abs(fit.fitted_slope - expected_slope) / expected_slope
        case_ok = (drift < NORM_DRIFT_TOL and min_overlap >= OVERLAP_FLOOR
                   and rel < SLOPE_REL_TOL)
        ok = ok and case_ok
        details.append(
            f"{species.value}(n={qn.n},ell={qn.ell},sz={s_z:+.1f}): "
            f"drift={drift:.1e} |ov|min={min_overlap:.8f} slope rel={rel:.2e}")
    return _result(4, "eigenmode-stationarity-gouy", ok, "; ".join(details))


def criterion_spin_ground(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """5: the q = 0 mode accumulates no Gouy phase (slope below 1e-8)."""
    record = _magnetic_run(Species.ELECTRON, -0.5, QuantumNumbers(0, 0), cfg)
    fit = extract_gouy(record)
    passed = abs(fit.fitted_slope) < GROUND_SLOPE_ABS_TOL
    return _result(5, "spin-ground-stationarity", passed,
                   f"|slope| = {abs(fit.fitted_slope):.3e} (tol {GROUND_SLOPE_ABS_TOL:.0e})")


def criterion_free_space(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """6: b = 0 reproduces the arctan Gouy law, width growth and curvature."""
    w0, k = 20.0, 1.0
    z_R = k * w0 * w0 / 2.0
    qn = QuantumNumbers(0, 0)
    ctx = free_context(Species.ELECTRON, -0.5, k)
    grid = make_radial_grid(24.0 * w0, cfg.grid_n_points)
    n_steps = 2 * cfg.prop_n_steps
    stride = max(1, n_steps // 200)
    field = sample_mode(lambda r: eval_free_lg(qn, w0, k, r, 0.0),
                        qn.ell, grid, Carrier.PARAXIAL).normalized()
    record = propagate(field, PropagationParams(ctx, qn.ell, 2.0 * z_R,
                                                n_steps, stride, qn))
    fit = extract_gouy_free(record, qn, w0, k)
    r2_analytic = (w0 * w0 / 2.0) * (1.0 + (record.z / z_R) ** 2)
    r2_rel = float(np.max(np.abs(record.r2_moment - r2_analytic) / r2_analytic))
    final_field = record.snapshots[-1][1]
    curvature = radial_phase_curvature(final_field, k)
    r_analytic = 2.0 * z_R + z_R / 2.0
    r_rel = abs(curvature.radius - r_analytic) / r_analytic
    passed = (fit.max_abs_dev < FREE_ZETA_DEV_TOL
              and r2_rel < FREE_R2_REL_TOL
              and r_rel < FREE_CURVATURE_REL_TOL)
    return _result(6, "free-space-limit", passed,
                   f"zeta max dev {fit.max_abs_dev:.2e} rad, r2 rel {r2_rel:.2e}, "
                   f"R rel {r_rel:.2e}")


def criterion_correspondence(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """7: at z = 0 and w0 = w_m the two mode families coincide; the shared
    part of the Gouy rates matches, the spin/vortex residual is reported."""
    b, k = 0.01, 1.0
    ctx = make_context(Species.ELECTRON, -0.5, b, k)
    grid = make_radial_grid(8.0 * ctx.w_m, cfg.grid_n_points)
    ok = True
    worst = 0.0
    residuals = []
    for n, ell in ((0, 0), (0, 1), (2, 3)):
        qn = QuantumNumbers(n, ell)
        landau = eval_landau_radial(qn, ctx.w_m, grid.nodes)
        free = eval_free_lg(qn, ctx.w_m, k, grid.nodes, 0.0)
        scale = np.abs(landau)
        mism = np.abs(free - landau)
        with np.errstate(invalid="ignore", divide="ignore"):
            rel = np.where(scale > 0.0, mism / scale, np.where(mism > 0.0, np.inf, 0.0))
        worst = max(worst, float(np.max(rel)))
        rates = free_vs_magnetic_rates(qn, ctx.particle, ctx)
        rate_gap = abs(rates.free_rate - rates.shared_part_rate)
        if rate_gap > CORRESPONDENCE_RATE_TOL * rates.shared_part_rate:
            ok = False
        residuals.append(f"(n={n},ell={ell}) residual={rates.residual_rate:+.4e}")
    if worst > CORRESPONDENCE_POINTWISE_TOL:
        ok = False
    return _result(7, "correspondence-w0-eq-wm", ok,
                   f"pointwise rel {worst:.1e} (tol {CORRESPONDENCE_POINTWISE_TOL:.0e}); "
                   + "; ".join(residuals))


def criterion_paraxiality(cfg: RunConfig = DEFAULT_CONFIG) -> CriterionResult:
    """8: forward-expansion gap below the quadratic Taylor bound for x <= 0.1."""
    ok = True
    worst = 0.0
    for k in (1.0, 3.0):
        for x in np.linspace(0.001, 0.1, 100):
            lam = x * k * k
            gap = paraxial_pz(k, lam).rel_gap
            bound = 0.5 * x * x * (1.0 + 1e-9)
            worst = max(worst, gap / bound)
            if gap > bound:
                ok = False
    return _result(8, "paraxiality-bound", ok,
                   f"max gap/bound = {worst:.3f} over 100-point sweeps at k = 1, 3")


def _deterministic_pipeline(out_dir: str) -> None:
    cfg = parse_config_text(
        "b = 0.01\nell = 1\nn = 0\ngrid.n_points = 1024\n"
        "prop.z_max = 20\nprop.n_steps = 400\nprop.snapshot_stride = 100\n")
    from . import pipeline

    os.makedirs(out_dir, exist_ok=True)
    ctx = pipeline.context_for(cfg)
    grid = pipeline.grid_for(cfg)
    report = spectrum_report(ctx, cfg.ell, 5, grid, cfg.pz)
    write_spectrum_csv(report, os.path.join(out_dir, "spectrum.csv"))
    field = pipeline.mode_field(cfg)
    dump_field(field, os.path.join(out_dir, "mode.dat"))
    record, fit = pipeline.run_gouy(cfg)
    write_record_csv(record, os.path.join(out_dir, "record.csv"))
    write_snapshots(record, out_dir)
    write_fit_csv(fit, os.path.join(out_dir, "gouy.csv"))


def criterion_determinism(cfg: RunConfig = DEFAULT_CONFIG,
                          work_dir: str | None = None) -> CriterionResult:
    """9: identical configuration produces byte-identical data files."""
    import tempfile

    def run_twice(base):
        dirs = [os.path.join(base, "det_run1"), os.path.join(base, "det_run2")]
        for d in dirs:
            _deterministic_pipeline(d)
        names = sorted(os.listdir(dirs[0]))
        if names != sorted(os.listdir(dirs[1])):
            return False, "file lists differ"
        match, mismatch, errors = filecmp.cmpfiles(dirs[0], dirs[1], names, shallow=False)
        if mismatch or errors:
            return False, f"differing files: {mismatch + errors}"
        return True, f"{len(names)} files byte-identical across two runs"

    if work_dir is not None:
        passed, details = run_twice(work_dir)
    else:
        with tempfile.TemporaryDirectory() as base:
            passed, details = run_twice(base)
    return _result(9, "determinism", passed, details)


_CRITERIA = (
    criterion_spectrum,
    criterion_convergence,
    criterion_non_equidistance,
    criterion_eigenmode_gouy,
    criterion_spin_ground,
    criterion_free_space,
    criterion_correspondence,
    criterion_paraxiality,
    criterion_determinism,
)


def run_all(cfg: RunConfig = DEFAULT_CONFIG, jobs: int = 1,
            only: tuple[int, ...] | None = None) -> list[CriterionResult]:
    """Run the acceptance criteria (all by default), ordered by id.

    Criteria are independent; with jobs > 1 they run concurrently and the
    aggregated results are identical to a sequential run.
    """
    selected = [(i + 1, fn) for i, fn in enumerate(_CRITERIA)
                if only is None or (i + 1) in only]

    def call(item):
        cid, fn = item
        try:
            return fn(cfg)
        except LandauParaxialError as exc:
            return _result(cid, fn.__name__.replace("criterion_", ""), False,
                           f"error: {exc}")

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(call, selected))
    else:
        results = [call(item) for item in selected]
    return sorted(results, key=lambda r: r.cid)


def format_table(results) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  c{r.cid}  {r.name}: {r.details}")
    total = sum(r.passed for r in results)
    lines.append(f"{total}/{len(results)} criteria passed")
    return "\n".join(lines)
