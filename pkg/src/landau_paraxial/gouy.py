"""Phase unwrapping and Gouy-phase extraction from propagation records."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._format import GENERATED_BY, sci
from .errors import DomainError, ExtractionError, FitError
from .grid import norm as field_norm
from .grid import overlap as field_overlap
from .grid import sample_mode
from .modes import QuantumNumbers, eval_free_lg, gouy_law_magnetic
from .propagate import PropagationRecord

MIN_SAMPLES = 10
MIN_OVERLAP_MODULUS = 1e-6


class FitModel(enum.Enum):
    LINEAR = "linear"
    ARCTAN = "arctan"


def unwrap_phase(series) -> np.ndarray:
    """Remove 2 pi jumps: output differs from input by exact multiples of 2 pi,
    successive differences have magnitude < pi, first sample unchanged.

    Valid only when the true phase advances by less than pi per sample; a
    violated sampling assumption is undetectable by construction.
    """
    return np.unwrap(np.asarray(series, dtype=float))


def fit_linear(z, phi) -> tuple[float, float]:
    """Least squares through the origin: slope = sum(phi z) / sum(z^2), plus rms."""
    z = np.asarray(z, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if z.size < 2:
        raise FitError(f"need at least 2 samples, got {z.size}")
    denom = float(np.sum(z * z))
    if denom == 0.0:
        raise FitError("degenerate abscissa: all z samples are zero")
    slope = float(np.sum(phi * z)) / denom
    rms = math.sqrt(float(np.mean((phi - slope * z) ** 2)))
    return slope, rms


@dataclass(frozen=True)
class GouyFit:
    """Extracted Gouy phase against an analytic law."""

    model: FitModel
    z: np.ndarray
    zeta: np.ndarray            # unwrapped, zero-referenced at z = 0
    zeta_analytic: np.ndarray
    fitted_slope: float         # rate (linear) or arctan-curve amplitude (arctan)
    analytic_rate: float        # q b/(2k) (linear) or the 2n+|ell|+1 prefactor (arctan)
    rel_slope_error: float
    rms_residual: float
    max_abs_dev: float


def _relative_slope_error(fitted: float, analytic: float) -> float:
    # For an exactly zero analytic rate the absolute slope is the error.
    if analytic == 0.0:
        return abs(fitted)
    return abs(fitted - analytic) / abs(analytic)


def extract_gouy(record: PropagationRecord, qn: QuantumNumbers | None = None) -> GouyFit:
    """Linear Gouy law from the overlap phase of an eigenmode propagation.

    zeta(z) = -unwrap(arg overlap(z)), zero-referenced at z = 0; the slope is
    fitted through the origin and compared with q b / (2k).
    """
    if record.z.size < MIN_SAMPLES:
        raise ExtractionError(f"record has {record.z.size} samples, need {MIN_SAMPLES}")
    moduli = np.abs(record.overlap)
    if float(moduli.min()) < MIN_OVERLAP_MODULUS:
        raise ExtractionError(
            f"overlap modulus dropped to {moduli.min():.3e}; "
            "mode decayed or hit the wall, phase is unreliable")
    if qn is None:
        qn = record.params.qn
    if qn is None:
        raise ExtractionError("mode identity unknown: pass qn or set it in PropagationParams")
    raw = unwrap_phase(np.angle(record.overlap))
    zeta = -(raw - raw[0])
    slope, rms = fit_linear(record.z, zeta)
    law = gouy_law_magnetic(qn, record.params.ctx.particle, record.params.ctx)
    analytic = law.rate
    return GouyFit(
        model=FitModel.LINEAR,
        z=record.z,
        zeta=zeta,
        zeta_analytic=analytic * record.z,
        fitted_slope=slope,
        analytic_rate=analytic,
        rel_slope_error=_relative_slope_error(slope, analytic),
        rms_residual=rms,
        max_abs_dev=float(np.max(np.abs(zeta - analytic * record.z))),
    )


def extract_gouy_free(record: PropagationRecord, qn: QuantumNumbers,
                      w0: float, k: float) -> GouyFit:
    """Arctan Gouy law from a free-space record, checked snapshot by snapshot.

    Each snapshot is projected onto the sampled analytic beam at the same z;
    the projection phase isolates the numerically accumulated Gouy phase from
    the spreading amplitude and the curved wavefront, so the overlap with the
    z = 0 field (which mixes in the curvature phase) is never used here.
    """
    if record.params.ctx.b != 0.0:
        raise DomainError("free-space extraction requires a record propagated with b = 0")
    snaps = record.snapshots
    if len(snaps) < MIN_SAMPLES:
        raise ExtractionError(f"record has {len(snaps)} snapshots, need {MIN_SAMPLES}")
    prefactor = 2 * qn.n + abs(qn.ell) + 1
    z_R = k * w0 * w0 / 2.0
    zs = np.array([z for z, _ in snaps])
    zeta_analytic = prefactor * np.arctan(zs / z_R)
    deviations = np.empty(zs.size)
    for i, (z, field) in enumerate(snaps):
        reference = sample_mode(lambda r: eval_free_lg(qn, w0, k, r, z),
                                qn.ell, field.grid, field.carrier).normalized()
        proj = field_overlap(reference, field) / field_norm(field)
        if abs(proj) < MIN_OVERLAP_MODULUS:
            raise ExtractionError(
                f"projection modulus {abs(proj):.3e} at z = {z:g}; field left the mode")
        # conj(ref) u carries e^{i(zeta_analytic - zeta_numeric)}.
        deviations[i] = -math.atan2(proj.imag, proj.real)
    zeta = zeta_analytic + deviations
    basis = np.arctan(zs / z_R)
    denom = float(np.sum(basis * basis))
    if denom == 0.0:
        raise FitError("degenerate abscissa: snapshots span z = 0 only")
    amplitude = float(np.sum(zeta * basis)) / denom
    rms = math.sqrt(float(np.mean(deviations ** 2)))
    return GouyFit(
        model=FitModel.ARCTAN,
        z=zs,
        zeta=zeta,
        zeta_analytic=zeta_analytic,
        fitted_slope=amplitude,
        analytic_rate=float(prefactor),
        rel_slope_error=_relative_slope_error(amplitude, float(prefactor)),
        rms_residual=rms,
        max_abs_dev=float(np.max(np.abs(deviations))),
    )


def write_fit_csv(fit: GouyFit, file) -> None:
    own = isinstance(file, (str, bytes)) or hasattr(file, "__fspath__")
    fh = open(file, "w", newline="\n") if own else file
    try:
        fh.write(GENERATED_BY + "\n")
        fh.write("z,zeta_num,zeta_analytic,residual\n")
        for z, zn, za in zip(fit.z, fit.zeta, fit.zeta_analytic):
            fh.write(f"{sci(z)},{sci(zn)},{sci(za)},{sci(zn - za)}\n")
        fh.write(
            f"# slope={sci(fit.fitted_slope)} analytic={sci(fit.analytic_rate)} "
            f"rel_err={sci(fit.rel_slope_error)} rms={sci(fit.rms_residual)}\n"
        )
    finally:
        if own:
            fh.close()
