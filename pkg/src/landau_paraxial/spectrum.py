"""Discretized transverse operator as a symmetric tridiagonal matrix and a
deterministic Sturm-bisection eigensolver for its low-lying spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._format import GENERATED_BY, sci
from .errors import DomainError, NumericsError
from .grid import RadialGrid, TransverseOperatorParams, operator_coefficients
from .modes import QuantumNumbers, landau_energy, q_factor
from .units import BeamContext

MAX_REPORT_LEVELS = 12
_SAFE_MIN = 2.2250738585072014e-308  # smallest normal double, pivot floor scale


@dataclass(frozen=True, eq=False)
class TridiagonalSym:
    """Symmetric tridiagonal matrix stored as its diagonal and off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if d.ndim != 1 or e.shape != (max(d.size - 1, 0),):
            raise DomainError("offdiag must have length len(diag) - 1")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise NumericsError("matrix entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return self.diag.size


def build_transverse_matrix(grid: RadialGrid, params: TransverseOperatorParams) -> TridiagonalSym:
    """Matrix of the transverse operator acting on v = sqrt(r) u, Dirichlet at r_max."""
    diag, offdiag = operator_coefficients(grid, params)
    return TridiagonalSym(diag, offdiag)


def _negcount(diag, offsq, x, pivmin):
    """Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots)."""
    count = 0
    q = diag[0] - x
    if -pivmin < q < pivmin:
        q = -pivmin
    if q < 0.0:
        count = 1
    for i in range(1, len(diag)):
        q = diag[i] - x - offsq[i - 1] / q
        if -pivmin < q < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def lowest_eigenvalues(matrix: TridiagonalSym, count: int) -> list[float]:
    """The `count` smallest eigenvalues, ascending, by Sturm-sequence bisection.

    Each eigenvalue is bracketed from the Gershgorin interval and bisected to
    absolute tolerance 1e-12 * max(1, |lambda|); fully deterministic.
    """
    n = matrix.n
    if not isinstance(count, (int, np.integer)) or count < 1 or count > n:
        raise DomainError(f"count must be in [1, {n}], got {count!r}")
    diag = matrix.diag.tolist()
    off = matrix.offdiag
    offsq = (off * off).tolist()
    radius = np.zeros(n)
    if n > 1:
        radius[:-1] += np.abs(off)
        radius[1:] += np.abs(off)
    lo = float(np.min(matrix.diag - radius))
    hi = float(np.max(matrix.diag + radius))
    pivmin = _SAFE_MIN * max(1.0, max(offsq, default=0.0))
    out = []
    for index in range(count):
        a, b = lo, hi
        while True:
            tol = 1e-12 * max(1.0, abs(a), abs(b))
            if b - a <= tol:
                break
            mid = 0.5 * (a + b)
            if _negcount(diag, offsq, mid, pivmin) >= index + 1:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
    return out


@dataclass(frozen=True)
class SpectrumRow:
    n: int
    numeric_lambda: float
    analytic_lambda: float
    rel_err: float
    energy: float
    spacing: float


@dataclass(frozen=True)
class SpectrumReport:
    """Numeric vs analytic transverse eigenvalues plus the relativistic ladder."""

    rows: tuple
    ctx: BeamContext
    ell: int
    p_z: float
    r_max: float
    n_points: int
    h: float
    spacings_decreasing: bool

    @property
    def max_rel_err(self) -> float:
        return max(row.rel_err for row in self.rows)


def spectrum_report(ctx: BeamContext, ell: int, n_levels: int, grid: RadialGrid,
                    p_z: float = 0.0) -> SpectrumReport:
    """Compare the lowest n_levels numeric eigenvalues with q*b and tabulate
    the relativistic energies and their spacings."""
    if not isinstance(n_levels, (int, np.integer)) or not 1 <= n_levels <= MAX_REPORT_LEVELS:
        raise DomainError(f"n_levels must be in [1, {MAX_REPORT_LEVELS}], got {n_levels!r}")
    if ctx.b <= 0.0:
        raise DomainError("spectrum_report requires a magnetic context (b > 0)")
    matrix = build_transverse_matrix(grid, TransverseOperatorParams.from_context(ctx, ell))
    numeric = lowest_eigenvalues(matrix, int(n_levels))
    rows = []
    energies = [landau_energy(QuantumNumbers(n, ell), ctx.particle, p_z, ctx.b)
                for n in range(n_levels + 1)]
    for n in range(n_levels):
        analytic = q_factor(QuantumNumbers(n, ell), ctx.particle) * ctx.b
        # Error scale is |analytic| except for the exact-zero ground level,
        # where the level spacing scale b is the meaningful yardstick.
        scale = abs(analytic) if analytic != 0.0 else ctx.b
        rows.append(SpectrumRow(
            n=n,
            numeric_lambda=numeric[n],
            analytic_lambda=analytic,
            rel_err=abs(numeric[n] - analytic) / scale,
            energy=energies[n],
            spacing=energies[n + 1] - energies[n],
        ))
    spacings = [row.spacing for row in rows]
    decreasing = all(b_ < a_ for a_, b_ in zip(spacings, spacings[1:]))
    return SpectrumReport(tuple(rows), ctx, int(ell), float(p_z),
                          grid.r_max, grid.n_points, grid.h, decreasing)


def write_spectrum_csv(report: SpectrumReport, file) -> None:
    own = isinstance(file, (str, bytes)) or hasattr(file, "__fspath__")
    fh = open(file, "w", newline="\n") if own else file
    try:
        fh.write(GENERATED_BY + "\n")
        fh.write("n,numeric_lambda,analytic_lambda,rel_err,E_rel,spacing\n")
        for row in report.rows:
            fh.write(
                f"{row.n},{sci(row.numeric_lambda)},{sci(row.analytic_lambda)},"
                f"{sci(row.rel_err)},{sci(row.energy)},{sci(row.spacing)}\n"
            )
    finally:
        if own:
            fh.close()
