"""Shared text formatting for data files (17 significant digits, no timestamps)."""

from . import __version__ as _version

GENERATED_BY = f"# generated-by landau-paraxial v{_version}"


def sci(x: float) -> str:
    """17-significant-digit scientific notation used in every data file."""
    return f"{x:.16e}"
