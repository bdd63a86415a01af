"""Radial discretization: staggered grids, sampled fields, weighted inner
products, the transverse operator, and beam diagnostics.

The grid is uniform with nodes r_j = (j - 1/2) h, j = 1..N, which keeps the
axis off the mesh; the conjugate variable v = sqrt(r) u turns the weighted
inner product into a plain l2 sum and the transverse operator into a symmetric
tridiagonal matrix (see spectrum.build_transverse_matrix).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from ._format import GENERATED_BY, sci
from .errors import DomainError, FitError, GridMismatchError, NumericsError
from .units import BeamContext

# Amplitude cutoff and minimum node count for the wavefront-curvature fit.
CURVATURE_FIT_AMPLITUDE_CUTOFF = 1e-3
CURVATURE_FIT_MIN_NODES = 8
FLAT_CURVATURE_THRESHOLD = 1e-12  # |1/R| below this reports a plane wavefront


class Carrier(enum.Enum):
    """Longitudinal phase convention carried by a sampled field.

    'fw' fields include the stationary e^{i p_z z} factor symbolically,
    'paraxial' fields are envelopes with the fast e^{i k z} carrier removed.
    """

    FW = "fw"
    PARAXIAL = "paraxial"


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Uniform staggered mesh r_j = (j - 1/2) h on (0, r_max)."""

    n_points: int
    r_max: float
    h: float
    nodes: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, RadialGrid):
            return NotImplemented
        return self.n_points == other.n_points and self.r_max == other.r_max

    def __hash__(self):
        return hash((self.n_points, self.r_max))


def make_radial_grid(r_max: float, n_points: int) -> RadialGrid:
    if not isinstance(n_points, (int, np.integer)) or n_points < 16:
        raise DomainError(f"n_points must be an integer >= 16, got {n_points!r}")
    if not math.isfinite(r_max) or r_max <= 0.0:
        raise DomainError(f"r_max must be finite and > 0, got {r_max!r}")
    h = r_max / n_points
    nodes = (np.arange(1, n_points + 1) - 0.5) * h
    nodes.setflags(write=False)
    return RadialGrid(int(n_points), float(r_max), h, nodes)


@dataclass(frozen=True, eq=False)
class ComplexRadialField:
    """Complex amplitude u(r_j) at fixed azimuthal index ell.

    Treated as an immutable value: the sample array is copied in and frozen,
    and every operation returns a new field.
    """

    grid: RadialGrid
    ell: int
    values: np.ndarray
    carrier: Carrier

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.n_points,):
            raise DomainError(
                f"values shape {vals.shape} does not match grid size {self.grid.n_points}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "ell", int(self.ell))

    def with_values(self, values) -> "ComplexRadialField":
        return ComplexRadialField(self.grid, self.ell, values, self.carrier)

    def normalized(self) -> "ComplexRadialField":
        n = norm(self)
        if n < 1e-30:
            raise DomainError("cannot normalize a zero-amplitude field")
        return self.with_values(self.values / n)


def sample_mode(radial_profile_fn: Callable, ell: int, grid: RadialGrid,
                carrier: Carrier = Carrier.FW) -> ComplexRadialField:
    """Sample a radial profile on the grid nodes."""
    values = np.asarray(radial_profile_fn(grid.nodes), dtype=np.complex128)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        j = int(bad[0])
        raise NumericsError(
            f"profile is non-finite at node {j + 1} (r = {grid.nodes[j]!r})"
        )
    return ComplexRadialField(grid, ell, values, carrier)


def overlap(a: ComplexRadialField, b: ComplexRadialField) -> complex:
    """Weighted inner product sum conj(a_j) b_j 2 pi r_j h.

    Fields with different ell are orthogonal by the azimuthal integral; the
    exact zero is returned without touching the samples.
    """
    if a.grid != b.grid:
        raise GridMismatchError("overlap requires fields on the same grid")
    if a.ell != b.ell:
        return 0.0 + 0.0j
    g = a.grid
    return complex(2.0 * math.pi * g.h * np.sum(np.conj(a.values) * b.values * g.nodes))


def norm(field: ComplexRadialField) -> float:
    """Quadrature norm sqrt(sum |u_j|^2 2 pi r_j h)."""
    g = field.grid
    s = 2.0 * math.pi * g.h * np.sum((field.values.real ** 2 + field.values.imag ** 2) * g.nodes)
    return math.sqrt(s)


def second_moment(field: ComplexRadialField) -> float:
    """<r^2> = sum |u_j|^2 r_j^2 2 pi r_j h (assumes a unit-norm field)."""
    g = field.grid
    w2 = field.values.real ** 2 + field.values.imag ** 2
    return float(2.0 * math.pi * g.h * np.sum(w2 * g.nodes ** 3))


@dataclass(frozen=True)
class TransverseOperatorParams:
    """Azimuthal index plus the field/spin data entering the transverse operator."""

    ell: int
    b: float
    s_z: Fraction
    charge_sign: int

    def __post_init__(self):
        if not math.isfinite(self.b) or self.b < 0.0:
            raise DomainError(f"field strength b must be finite and >= 0, got {self.b!r}")
        if self.charge_sign not in (-1, +1):
            raise DomainError(f"charge_sign must be -1 or +1, got {self.charge_sign!r}")

    @classmethod
    def from_context(cls, ctx: BeamContext, ell: int) -> "TransverseOperatorParams":
        return cls(int(ell), ctx.b, ctx.particle.s_z, ctx.particle.charge_sign)


def operator_coefficients(grid: RadialGrid, params: TransverseOperatorParams):
    """Symmetric tridiagonal coefficients of the transverse operator on v = sqrt(r) u.

    The radial Laplacian is discretized in flux form on the staggered mesh,
    which builds the axis regularity of bounded modes into the j = 1 row (the
    inward flux face sits exactly at r = 0 and carries no area):

        offdiag_j = -j / (h^2 sqrt(j^2 - 1/4))
        diag_j    = 2/h^2 + ell^2 / r_j^2 + potential_j

    The harmonic confinement b^2 r^2 / 4 enters through its cell-face average
    b^2 (r_j^2 + h^2/4) / 4, which centers the quadratic potential consistently
    with the flux form and removes the leading discretization error of the
    lowest radial level. Dirichlet closure (v = 0) at r_max.
    """
    n = grid.n_points
    h = grid.h
    r = grid.nodes
    b = params.b
    cs = float(params.charge_sign)
    sz = float(params.s_z)
    harmonic = b * b * (r * r + h * h / 4.0) / 4.0
    diag = 2.0 / (h * h) + (params.ell ** 2) / (r * r) - cs * b * params.ell \
        + harmonic - 2.0 * cs * sz * b
    j = np.arange(1, n, dtype=float)
    offdiag = -j / (h * h * np.sqrt(j * j - 0.25))
    return diag, offdiag


def tridiagonal_apply(diag: np.ndarray, offdiag: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Matvec of a symmetric tridiagonal operator stored as (diag, offdiag)."""
    w = diag * v
    w[:-1] += offdiag * v[1:]
    w[1:] += offdiag * v[:-1]
    return w


def apply_transverse_operator(field: ComplexRadialField,
                              params: TransverseOperatorParams) -> ComplexRadialField:
    """Apply the transverse operator to a sampled field (returns a new field)."""
    if field.ell != params.ell:
        raise DomainError(
            f"field has ell = {field.ell} but operator params have ell = {params.ell}"
        )
    diag, offdiag = operator_coefficients(field.grid, params)
    sq = np.sqrt(field.grid.nodes)
    w = tridiagonal_apply(diag, offdiag, sq * field.values)
    return field.with_values(w / sq)


class CurvatureFit(NamedTuple):
    radius: float      # +/- inf when the wavefront is flat
    is_flat: bool
    rms_residual: float


def radial_phase_curvature(field: ComplexRadialField, k: float) -> CurvatureFit:
    """Estimate the wavefront curvature radius R from arg(u) ~ c0 + k r^2/(2R).

    Intensity-weighted least squares over the nodes with |u| above 1e-3 of the
    peak; the masked phase is unwrapped radially first, so the fit expects a
    profile without sign flips across the window (ringless modes).
    """
    if not math.isfinite(k) or k <= 0.0:
        raise DomainError(f"wavenumber k must be finite and > 0, got {k!r}")
    amp = np.abs(field.values)
    peak = amp.max()
    if peak == 0.0:
        raise FitError("field has zero amplitude everywhere")
    mask = amp > CURVATURE_FIT_AMPLITUDE_CUTOFF * peak
    if int(mask.sum()) < CURVATURE_FIT_MIN_NODES:
        raise FitError(
            f"only {int(mask.sum())} nodes above the amplitude cutoff "
            f"(need {CURVATURE_FIT_MIN_NODES})"
        )
    r = field.grid.nodes[mask]
    phi = np.unwrap(np.angle(field.values[mask]))
    wgt = amp[mask] ** 2 * r
    x = r * r
    # Weighted normal equations for phi = c0 + s x.
    sw = wgt.sum()
    sx = np.sum(wgt * x)
    sxx = np.sum(wgt * x * x)
    sp = np.sum(wgt * phi)
    sxp = np.sum(wgt * x * phi)
    det = sw * sxx - sx * sx
    if det <= 0.0:
        raise FitError("degenerate abscissa in curvature fit")
    s = (sw * sxp - sx * sp) / det
    c0 = (sxx * sp - sx * sxp) / det
    resid = phi - (c0 + s * x)
    rms = math.sqrt(float(np.sum(wgt * resid ** 2) / sw))
    inv_r = 2.0 * s / k
    if abs(inv_r) < FLAT_CURVATURE_THRESHOLD:
        return CurvatureFit(math.inf, True, rms)
    return CurvatureFit(1.0 / inv_r, False, rms)


def convert_carrier(field: ComplexRadialField, k: float, z: float) -> ComplexRadialField:
    """Re-express a field in the other longitudinal phase convention.

    Multiplies by e^{-ikz} (fw -> paraxial) or e^{+ikz} (paraxial -> fw); at
    z = 0 this is a pure retag.
    """
    if field.carrier is Carrier.FW:
        phase, target = -k * z, Carrier.PARAXIAL
    else:
        phase, target = +k * z, Carrier.FW
    values = field.values if z == 0.0 else field.values * np.exp(1j * phase)
    return ComplexRadialField(field.grid, field.ell, values, target)


def dump_field(field: ComplexRadialField, file, z: float | None = None) -> None:
    """Write the plain-text dump: header line, then N rows 'r,re,im'."""
    own = isinstance(file, (str, bytes)) or hasattr(file, "__fspath__")
    fh = open(file, "w", newline="\n") if own else file
    try:
        header = (
            f"# radial-field ell={field.ell} carrier={field.carrier.value} "
            f"n={field.grid.n_points} rmax={sci(field.grid.r_max)}"
        )
        if z is not None:
            header += f" z={sci(z)}"
        fh.write(GENERATED_BY + "\n")
        fh.write(header + "\n")
        for r, u in zip(field.grid.nodes, field.values):
            fh.write(f"{sci(r)},{sci(u.real)},{sci(u.imag)}\n")
    finally:
        if own:
            fh.close()


def load_field(file):
    """Read a field dump back; returns (field, z or None)."""
    own = isinstance(file, (str, bytes)) or hasattr(file, "__fspath__")
    fh = open(file, "r") if own else file
    try:
        meta = None
        rows = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("# radial-field"):
                meta = dict(tok.split("=", 1) for tok in line[2:].split()[1:])
                continue
            if line.startswith("#"):
                continue
            r, re_part, im_part = line.split(",")
            rows.append(complex(float(re_part), float(im_part)))
        if meta is None:
            raise DomainError("missing '# radial-field' header")
        n = int(meta["n"])
        if len(rows) != n:
            raise DomainError(f"expected {n} sample rows, found {len(rows)}")
        grid = make_radial_grid(float(meta["rmax"]), n)
        field = ComplexRadialField(grid, int(meta["ell"]), np.array(rows),
                                   Carrier(meta["carrier"]))
        z = float(meta["z"]) if "z" in meta else None
        return field, z
    finally:
        if own:
            fh.close()
