"""Exception types shared across the package."""


class LandauParaxialError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LandauParaxialError, ValueError):
    """An input violates a documented precondition."""


class NumericsError(LandauParaxialError):
    """A computation produced non-finite or internally inconsistent values."""


class ParaxialityError(DomainError):
    """Transverse eigenvalue too large for the forward expansion (lambda >= k^2)."""


class GridMismatchError(LandauParaxialError, ValueError):
    """Two fields that must share a grid do not."""


class WallContactError(LandauParaxialError):
    """Beam amplitude at the outer boundary exceeded the hard guard threshold."""

    def __init__(self, z, ratio):
        self.z = z
        self.ratio = ratio
        super().__init__(
            f"boundary amplitude reached {ratio:.3e} of peak at z = {z:g} "
            "(limit 1e-4); enlarge the radial box"
        )


class FitError(LandauParaxialError):
    """A least-squares fit has too little or degenerate data."""


class ExtractionError(LandauParaxialError):
    """Phase extraction failed (decayed overlap or unusable record)."""


class ConfigError(LandauParaxialError, ValueError):
    """Run configuration could not be parsed or validated."""

    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if key is not None:
            parts.append(f"key '{key}'")
        full = f"{message} [{', '.join(parts)}]" if parts else message
        super().__init__(full)


class FixtureLookupError(LandauParaxialError, KeyError):
    """Requested fixture name is not in the fixture table."""
