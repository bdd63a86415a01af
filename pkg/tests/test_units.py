import math
from fractions import Fraction

import pytest

from landau_paraxial import (CRITICAL_FIELD_TESLA, DomainError, SiConversion,
                             Species, electron, free_context, make_context,
                             positron, si_to_natural)


def test_w_m_from_small_field():
    ctx = make_context(Species.ELECTRON, -0.5, 0.01, 1.0)
    assert ctx.w_m == pytest.approx(20.0, rel=1e-15)
    assert ctx.particle.charge_sign == -1


def test_w_m_unity_at_b4():
    ctx = make_context(Species.ELECTRON, -0.5, 4.0, 1.0)
    assert ctx.w_m == 1.0


@pytest.mark.parametrize("b, k", [(0.0, 1.0), (-0.5, 1.0), (0.01, 0.0), (0.01, -2.0)])
def test_make_context_domain_errors(b, k):
    with pytest.raises(DomainError):
        make_context(Species.POSITRON, 0.5, b, k)


@pytest.mark.parametrize("sz", [0.0, 0.3, 1, -1.5, "x"])
def test_spin_must_be_half_integer(sz):
    with pytest.raises(DomainError):
        make_context(Species.ELECTRON, sz, 0.01, 1.0)


def test_spin_stored_exactly():
    assert electron(-0.5).s_z == Fraction(-1, 2)
    assert positron(Fraction(1, 2)).two_s_z == 1
    assert positron(0.5).charge_sign == +1


@pytest.mark.parametrize("b", [1e-6, 0.01, 0.1, 1.0, 4.0, 123.456])
def test_width_identity(b):
    # w_m^2 b = 4 up to float rounding of the square root
    ctx = make_context(Species.ELECTRON, -0.5, b, 1.0)
    assert ctx.w_m ** 2 * ctx.b == pytest.approx(4.0, rel=1e-14)


def test_context_is_pure_and_deterministic():
    a = make_context(Species.ELECTRON, -0.5, 0.01, 2.0)
    b = make_context(Species.ELECTRON, -0.5, 0.01, 2.0)
    assert a == b
    assert a.w_m == b.w_m


def test_free_context_has_infinite_width():
    ctx = free_context(Species.ELECTRON, -0.5, 1.0)
    assert ctx.b == 0.0
    assert math.isinf(ctx.w_m)


def test_paraxiality_metric_and_pz():
    ctx = make_context(Species.ELECTRON, -0.5, 0.01, 1.0)
    assert ctx.paraxiality(0.02) == pytest.approx(0.02)
    assert ctx.p_z_exact(0.02) == pytest.approx(math.sqrt(0.98), rel=1e-15)


def test_si_ratio_identity():
    assert si_to_natural(CRITICAL_FIELD_TESLA) == 1.0
    assert si_to_natural(0.0) == 0.0


def test_si_one_tesla_matches_fixture():
    from landau_paraxial import load_fixture

    assert si_to_natural(1.0) == pytest.approx(load_fixture("b_for_one_tesla").value,
                                               rel=1e-15)
    assert CRITICAL_FIELD_TESLA == load_fixture("critical_field_tesla").value


def test_si_negative_rejected():
    with pytest.raises(DomainError):
        si_to_natural(-1.0)
    with pytest.raises(DomainError):
        SiConversion(float("nan"))


def test_critical_field_magnitude():
    # Schwinger scale, a few 1e9 tesla
    assert 4.0e9 < CRITICAL_FIELD_TESLA < 5.0e9
