"""Closed-form physics: Landau energies, analytic modes, Gouy-phase laws.

A mode is identified by (n, ell) plus the spin/species data of a ParticleSpec.
Radial profiles are evaluated on demand; the azimuthal factor e^{i ell phi} and
any longitudinal carrier are applied symbolically by callers, never sampled.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericsError, ParaxialityError
from .special import laguerre, mode_norm_constant
from .units import BeamContext, ParticleSpec


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index n >= 0 and orbital angular momentum projection ell."""

    n: int
    ell: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise DomainError(f"radial index n must be a non-negative integer, got {self.n!r}")
        if not isinstance(self.ell, (int, np.integer)):
            raise DomainError(f"ell must be an integer, got {self.ell!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "ell", int(self.ell))


class GouyLawKind(enum.Enum):
    LINEAR_MAGNETIC = "linear_magnetic"
    ARCTAN_FREE = "arctan_free"


class Physicality(enum.Enum):
    PHYSICAL = "physical"
    UNPHYSICAL_ROTATION = "unphysical_rotation"


def q_factor(qn: QuantumNumbers, particle: ParticleSpec) -> int:
    """Integer prefactor of the spectrum and the magnetic Gouy rate.

    Electrons: 2n + 1 + |ell| + ell + 2 s_z; positrons flip the sign of the
    (ell + 2 s_z) part. Always an even integer >= 0.
    """
    return 2 * qn.n + 1 + abs(qn.ell) - particle.charge_sign * (qn.ell + particle.two_s_z)


def landau_energy(qn: QuantumNumbers, particle: ParticleSpec, p_z: float, b: float) -> float:
    """Relativistic level E = sqrt(1 + p_z^2 + q b), in units of the mass."""
    if not math.isfinite(b) or b < 0.0:
        raise DomainError(f"field strength b must be finite and >= 0, got {b!r}")
    if not math.isfinite(p_z):
        raise DomainError(f"p_z must be finite, got {p_z!r}")
    radicand = 1.0 + p_z * p_z + q_factor(qn, particle) * b
    if radicand <= 0.0:
        raise NumericsError("energy radicand is non-positive; q_factor invariant broken")
    return math.sqrt(radicand)


def transverse_eigenvalue(qn: QuantumNumbers, particle: ParticleSpec, b: float) -> float:
    """Eigenvalue q*b of the transverse operator for the (n, ell, s_z) mode."""
    if not math.isfinite(b) or b < 0.0:
        raise DomainError(f"field strength b must be finite and >= 0, got {b!r}")
    return q_factor(qn, particle) * b


class PzExpansion(NamedTuple):
    exact: float
    approx: float
    rel_gap: float


def paraxial_pz(k: float, lam: float) -> PzExpansion:
    """Exact sqrt(k^2 - lambda) vs the forward expansion k - lambda/(2k)."""
    if not math.isfinite(k) or k <= 0.0:
        raise DomainError(f"wavenumber k must be finite and > 0, got {k!r}")
    if lam >= k * k:
        raise ParaxialityError(f"transverse eigenvalue {lam!r} >= k^2 = {k * k!r}")
    exact = math.sqrt(k * k - lam)
    approx = k - lam / (2.0 * k)
    return PzExpansion(exact, approx, abs(exact - approx) / exact)


def _radial_amplitude(n: int, ell: int, w: float, r):
    """Real profile (C/w) (sqrt(2) r / w)^|ell| L_n^|ell|(2 r^2/w^2) e^{-r^2/w^2}."""
    la = abs(ell)
    c = mode_norm_constant(n, ell) / w
    arg = 2.0 * r * r / (w * w)
    return c * (np.sqrt(2.0) * r / w) ** la * laguerre(n, la, arg) * np.exp(-r * r / (w * w))


def eval_landau_radial(qn: QuantumNumbers, w_m: float, r):
    """Radial amplitude of the magnetic eigenmode, unit-normalized in the plane.

    The full mode is amplitude(r) * e^{i ell phi} * (longitudinal carrier);
    those factors are applied by callers.
    """
    if not math.isfinite(w_m) or w_m <= 0.0:
        raise DomainError(f"magnetic width w_m must be finite and > 0, got {w_m!r}")
    if np.any(np.asarray(r) < 0.0):
        raise DomainError("radius r must be >= 0")
    return _radial_amplitude(qn.n, qn.ell, w_m, r)


@dataclass(frozen=True)
class FreeBeamGeometry:
    """Waist, Rayleigh length and the z-dependent width/curvature/Gouy base."""

    w0: float
    z: float
    z_R: float
    w_z: float
    R_z: float        # +inf on the waist plane
    zeta: float       # base Gouy phase arctan(z/z_R); mode prefactor applied by callers
    is_flat: bool     # True exactly at z = 0 where the wavefront is plane


def free_beam_geometry(w0: float, k: float, z: float) -> FreeBeamGeometry:
    """Width w(z), curvature radius R(z) and base Gouy phase of a free beam."""
    if not math.isfinite(w0) or w0 <= 0.0:
        raise DomainError(f"waist w0 must be finite and > 0, got {w0!r}")
    if not math.isfinite(k) or k <= 0.0:
        raise DomainError(f"wavenumber k must be finite and > 0, got {k!r}")
    z_R = k * w0 * w0 / 2.0
    x = z / z_R
    w_z = w0 * math.sqrt(1.0 + x * x)
    if z == 0.0:
        return FreeBeamGeometry(w0, z, z_R, w_z, math.inf, 0.0, True)
    return FreeBeamGeometry(w0, z, z_R, w_z, z + z_R * z_R / z, math.atan(x), False)


def eval_free_lg(qn: QuantumNumbers, w0: float, k: float, r, z: float):
    """Complex free-space Laguerre-Gauss profile at propagation distance z.

    amplitude(r, z) * exp(i k r^2 / (2 R(z))) * exp(-i (2n+|ell|+1) arctan(z/z_R)),
    with the curvature phase identically zero on the waist plane. The azimuthal
    factor e^{i ell phi} is applied by callers.
    """
    geo = free_beam_geometry(w0, k, z)
    amp = _radial_amplitude(qn.n, qn.ell, geo.w_z, r)
    prefactor = 2 * qn.n + abs(qn.ell) + 1
    if geo.is_flat:
        return amp * np.exp(-1j * prefactor * geo.zeta)
    phase = k * np.asarray(r) ** 2 / (2.0 * geo.R_z) - prefactor * geo.zeta
    return amp * np.exp(1j * phase)


@dataclass(frozen=True)
class GouyLaw:
    """Phase-rate law: a prefactor q and the rate dzeta/dz it multiplies."""

    q_factor: int
    rate: float
    kind: GouyLawKind


def gouy_law_magnetic(qn: QuantumNumbers, particle: ParticleSpec, ctx: BeamContext) -> GouyLaw:
    """Linear Gouy law in a uniform field: rate = q b / (2k) = 2 q / (k w_m^2)."""
    q = q_factor(qn, particle)
    rate = q * ctx.b / (2.0 * ctx.k)
    alt = 2.0 * q / (ctx.k * ctx.w_m * ctx.w_m)
    # The two expressions are one algebraic identity (w_m^2 b = 4); they may
    # differ by float rounding only.
    if not math.isclose(rate, alt, rel_tol=1e-13, abs_tol=1e-300):
        raise NumericsError(f"Gouy-rate identity violated: {rate!r} vs {alt!r}")
    return GouyLaw(q, rate, GouyLawKind.LINEAR_MAGNETIC)


def physicality_check(qn: QuantumNumbers, particle: ParticleSpec) -> Physicality:
    """Flag rotation directions the Lorentz force cannot produce.

    Electrons need ell >= 0, positrons ell <= 0; other combinations are valid
    solutions of the eigenproblem but are flagged, never rejected.
    """
    if qn.ell * particle.charge_sign > 0:
        return Physicality.UNPHYSICAL_ROTATION
    return Physicality.PHYSICAL


class CorrespondenceRates(NamedTuple):
    """Magnetic rate split against the free-space small-z slope at w0 = w_m."""

    magnetic_rate: float       # q b / (2k)
    shared_prefactor: int      # 2n + |ell| + 1, common to both laws
    free_rate: float           # shared_prefactor / z_R evaluated with w0 = w_m
    shared_part_rate: float    # shared_prefactor * b / (2k)
    residual_rate: float       # magnetic minus shared part


def free_vs_magnetic_rates(qn: QuantumNumbers, particle: ParticleSpec,
                           ctx: BeamContext) -> CorrespondenceRates:
    """Compare the two Gouy laws where the wavefront flattens out.

    The free arctan law reduces to slope (2n+|ell|+1)/z_R; with w0 = w_m that
    equals the (2n+|ell|+1) part of the magnetic rate. The leftover
    (ell + 2 s_z)-type term is reported, not reconciled.
    """
    if ctx.b <= 0.0:
        raise DomainError("correspondence comparison requires b > 0")
    q = q_factor(qn, particle)
    shared = 2 * qn.n + abs(qn.ell) + 1
    magnetic = q * ctx.b / (2.0 * ctx.k)
    shared_part = shared * ctx.b / (2.0 * ctx.k)
    free_rate = shared * 2.0 / (ctx.k * ctx.w_m * ctx.w_m)
    return CorrespondenceRates(magnetic, shared, free_rate, shared_part,
                               magnetic - shared_part)
