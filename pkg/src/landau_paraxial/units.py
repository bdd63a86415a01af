"""Unit convention, particle/field configuration, derived scalar parameters.

Everything internal is in natural units hbar = c = m = 1: lengths in reduced
Compton wavelengths, momenta and energies in units of the particle mass. The
magnetic field enters through the single dimensionless strength

    b = |e| B / m^2      (B in units of the critical field)

and the only derived transverse scale is the magnetic width w_m = 2 / sqrt(b).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError

# Critical (Schwinger) field in SI tesla, m^2 c^2 / (e hbar), from the exact
# CODATA-2018 decimals via rational arithmetic (scripts/generate_fixtures.py).
CRITICAL_FIELD_TESLA = 4.4140052213994179e9

# Electron rest energy in eV from the same constants.
ELECTRON_MASS_EV = 5.1099894999616413e5

_HALF = Fraction(1, 2)


class Species(enum.Enum):
    ELECTRON = "electron"
    POSITRON = "positron"


_CHARGE_SIGN = {Species.ELECTRON: -1, Species.POSITRON: +1}


@dataclass(frozen=True)
class ParticleSpec:
    """Species, signed charge and spin projection of the beam particle.

    s_z is stored as an exact rational so that 2*s_z is an exact integer in
    quantum-number arithmetic.
    """

    species: Species
    s_z: Fraction
    charge_sign: int = field(init=False)

    def __post_init__(self):
        sz = _as_half_integer_spin(self.s_z)
        object.__setattr__(self, "s_z", sz)
        object.__setattr__(self, "charge_sign", _CHARGE_SIGN[self.species])

    @property
    def two_s_z(self) -> int:
        return int(2 * self.s_z)


def _as_half_integer_spin(value) -> Fraction:
    try:
        sz = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"s_z must be +1/2 or -1/2, got {value!r}") from exc
    if sz not in (_HALF, -_HALF):
        raise DomainError(f"s_z must be +1/2 or -1/2, got {value!r}")
    return sz


def electron(s_z) -> ParticleSpec:
    return ParticleSpec(Species.ELECTRON, s_z)


def positron(s_z) -> ParticleSpec:
    return ParticleSpec(Species.POSITRON, s_z)


@dataclass(frozen=True)
class BeamContext:
    """Immutable bundle of particle, field strength b and wavenumber k.

    b > 0 describes a uniform magnetic field with width w_m = 2/sqrt(b);
    b = 0 (built via free_context) is the free-space limit with w_m infinite.
    """

    particle: ParticleSpec
    b: float
    k: float
    w_m: float = field(init=False)

    def __post_init__(self):
        b = float(self.b)
        k = float(self.k)
        if not math.isfinite(b) or b < 0.0:
            raise DomainError(f"field strength b must be finite and >= 0, got {b!r}")
        if not math.isfinite(k) or k <= 0.0:
            raise DomainError(f"wavenumber k must be finite and > 0, got {k!r}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "w_m", 2.0 / math.sqrt(b) if b > 0.0 else math.inf)

    def paraxiality(self, lam: float) -> float:
        """Validity metric lambda/k^2 of the forward expansion."""
        return lam / (self.k * self.k)

    def p_z_exact(self, lam: float) -> float:
        """Longitudinal momentum sqrt(k^2 - lambda) for a transverse eigenvalue."""
        from .errors import ParaxialityError

        if lam >= self.k * self.k:
            raise ParaxialityError(
                f"transverse eigenvalue {lam!r} >= k^2 = {self.k**2!r}"
            )
        return math.sqrt(self.k * self.k - lam)


def make_context(species: Species, s_z, b: float, k: float) -> BeamContext:
    """Build a magnetic-field context; b and k must be strictly positive."""
    if not (isinstance(b, (int, float)) and math.isfinite(b)) or b <= 0.0:
        raise DomainError(f"field strength b must be finite and > 0, got {b!r}")
    return BeamContext(ParticleSpec(species, s_z), float(b), float(k))


def free_context(species: Species, s_z, k: float) -> BeamContext:
    """Free-space limit b = 0 (used for Laguerre-Gauss reference runs)."""
    return BeamContext(ParticleSpec(species, s_z), 0.0, float(k))


@dataclass(frozen=True)
class SiConversion:
    """Bridge from an SI magnetic field to the dimensionless strength b."""

    B_tesla: float
    electron_mass_eV: float = ELECTRON_MASS_EV
    critical_field_tesla: float = CRITICAL_FIELD_TESLA

    def __post_init__(self):
        if not math.isfinite(self.B_tesla) or self.B_tesla < 0.0:
            raise DomainError(f"B_tesla must be finite and >= 0, got {self.B_tesla!r}")

    @property
    def b(self) -> float:
        return self.B_tesla / self.critical_field_tesla


def si_to_natural(B_tesla: float) -> float:
    """Dimensionless b for a magnetic field given in tesla."""
    return SiConversion(float(B_tesla)).b
