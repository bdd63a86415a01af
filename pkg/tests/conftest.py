import numpy as np
import pytest

from landau_paraxial import (Carrier, QuantumNumbers, Species, eval_landau_radial,
                             make_context, make_radial_grid, sample_mode)


@pytest.fixture(scope="session")
def electron_ctx():
    """Electron, s_z = -1/2, b = 0.01, k = 1 (w_m = 20)."""
    return make_context(Species.ELECTRON, -0.5, 0.01, 1.0)


@pytest.fixture(scope="session")
def default_grid(electron_ctx):
    return make_radial_grid(8.0 * electron_ctx.w_m, 2048)


def landau_field(ctx, qn: QuantumNumbers, grid, carrier=Carrier.PARAXIAL,
                 normalized=True):
    field = sample_mode(lambda r: eval_landau_radial(qn, ctx.w_m, r),
                        qn.ell, grid, carrier)
    return field.normalized() if normalized else field


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def assert_close(actual, expected, rel=0.0, abs_tol=0.0):
    bound = rel * abs(expected) + abs_tol
    assert abs(actual - expected) <= bound, (
        f"{actual!r} differs from {expected!r} by {abs(actual - expected):.3e} "
        f"(bound {bound:.3e})")
