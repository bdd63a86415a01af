import io
import math

import numpy as np
import pytest

from conftest import landau_field
from landau_paraxial import (Carrier, ComplexRadialField, DomainError, FitError,
                             GridMismatchError, NumericsError, QuantumNumbers,
                             Species, TransverseOperatorParams,
                             apply_transverse_operator, convert_carrier,
                             dump_field, eval_landau_radial, load_field,
                             make_context, make_radial_grid, norm, overlap,
                             radial_phase_curvature, sample_mode, second_moment,
                             transverse_eigenvalue)


class TestRadialGrid:
    def test_large_grid_spacing(self):
        g = make_radial_grid(160.0, 2048)
        assert g.h == 0.078125
        assert g.nodes[0] == 0.0390625
        assert g.nodes[-1] == pytest.approx(160.0 - g.h / 2.0, rel=1e-15)

    def test_small_grid_spacing(self):
        assert make_radial_grid(1.0, 16).h == 0.0625

    @pytest.mark.parametrize("r_max, n", [(-1.0, 16), (0.0, 16), (1.0, 8), (1.0, 15)])
    def test_invalid_sizes(self, r_max, n):
        with pytest.raises(DomainError):
            make_radial_grid(r_max, n)

    def test_nodes_strictly_increasing_and_frozen(self):
        g = make_radial_grid(10.0, 64)
        assert np.all(np.diff(g.nodes) > 0)
        with pytest.raises(ValueError):
            g.nodes[0] = 1.0

    def test_equality_by_shape(self):
        assert make_radial_grid(10.0, 64) == make_radial_grid(10.0, 64)
        assert make_radial_grid(10.0, 64) != make_radial_grid(10.0, 128)


class TestSampling:
    def test_gaussian_sample_is_real_positive(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 0), default_grid,
                         normalized=False)
        assert np.all(f.values.real > 0)
        assert np.all(f.values.imag == 0)

    def test_vortex_first_node_small_but_nonzero(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid,
                         normalized=False)
        assert 0 < abs(f.values[0]) < abs(f.values[128])

    def test_non_finite_sample_names_node(self, default_grid):
        def bad(r):
            out = np.ones_like(r)
            out[3] = np.nan
            return out

        with pytest.raises(NumericsError, match="node 4"):
            sample_mode(bad, 0, default_grid)

    def test_values_are_frozen_copies(self, default_grid):
        src = np.ones(default_grid.n_points, dtype=complex)
        f = ComplexRadialField(default_grid, 0, src, Carrier.FW)
        src[0] = 99.0
        assert f.values[0] == 1.0
        with pytest.raises(ValueError):
            f.values[0] = 2.0

    def test_quadrature_norm_converges_at_second_order(self, electron_ctx):
        # axis kink of the ell = 0 integrand gives an O(h^2) norm defect
        qn = QuantumNumbers(0, 0)
        defects = []
        for n_points in (1024, 2048, 4096):
            g = make_radial_grid(8.0 * electron_ctx.w_m, n_points)
            f = landau_field(electron_ctx, qn, g, normalized=False)
            defects.append(abs(norm(f) ** 2 - 1.0))
        assert defects[0] / defects[1] == pytest.approx(4.0, abs=1.0)
        assert defects[1] / defects[2] == pytest.approx(4.0, abs=1.0)


class TestOverlap:
    def test_self_overlap_of_unit_field(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid)
        ov = overlap(f, f)
        assert ov.real == pytest.approx(1.0, abs=1e-12)
        assert ov.imag == 0.0

    def test_radial_orthogonality_axis_kink_sector(self, electron_ctx):
        # ell = 0 integrands carry the O(h^2) axis defect: use a fine mesh
        g = make_radial_grid(160.0, 131072)
        f0 = landau_field(electron_ctx, QuantumNumbers(0, 0), g, normalized=False)
        f1 = landau_field(electron_ctx, QuantumNumbers(1, 0), g, normalized=False)
        assert abs(overlap(f0, f1)) < 1e-9

    def test_radial_orthogonality_vortex_sector(self, electron_ctx, default_grid):
        f0 = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid,
                          normalized=False)
        f1 = landau_field(electron_ctx, QuantumNumbers(1, 1), default_grid,
                          normalized=False)
        assert abs(overlap(f0, f1)) < 1e-9

    def test_azimuthal_orthogonality_is_exact_zero(self, electron_ctx, default_grid):
        f0 = landau_field(electron_ctx, QuantumNumbers(0, 0), default_grid)
        f1 = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid)
        assert overlap(f0, f1) == 0j

    def test_grid_mismatch_rejected(self, electron_ctx, default_grid):
        other = make_radial_grid(default_grid.r_max, default_grid.n_points // 2)
        a = landau_field(electron_ctx, QuantumNumbers(0, 0), default_grid)
        b = landau_field(electron_ctx, QuantumNumbers(0, 0), other)
        with pytest.raises(GridMismatchError):
            overlap(a, b)


class TestTransverseOperator:
    def params(self, ctx, ell):
        return TransverseOperatorParams.from_context(ctx, ell)

    def test_eigenmode_residual_and_eigenvalue(self, electron_ctx, default_grid):
        qn = QuantumNumbers(0, 1)
        f = landau_field(electron_ctx, qn, default_grid)
        tf = apply_transverse_operator(f, self.params(electron_ctx, 1))
        lam = transverse_eigenvalue(qn, electron_ctx.particle, electron_ctx.b)
        rayleigh = overlap(f, tf).real
        assert rayleigh == pytest.approx(lam, rel=1e-6)
        resid = norm(tf.with_values(tf.values - lam * f.values))
        assert resid < 1e-4 * lam / electron_ctx.b  # O(h^2) leftover

    def test_residual_halves_as_h_squared(self, electron_ctx):
        qn = QuantumNumbers(0, 1)
        lam = transverse_eigenvalue(qn, electron_ctx.particle, electron_ctx.b)
        resids = []
        for n_points in (1024, 2048):
            g = make_radial_grid(8.0 * electron_ctx.w_m, n_points)
            f = landau_field(electron_ctx, qn, g)
            tf = apply_transverse_operator(f, self.params(electron_ctx, 1))
            resids.append(norm(tf.with_values(tf.values - lam * f.values)))
        assert resids[0] / resids[1] == pytest.approx(4.0, abs=0.5)

    def test_zero_eigenvalue_mode_maps_to_residual_only(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 0), default_grid)
        tf = apply_transverse_operator(f, self.params(electron_ctx, 0))
        assert norm(tf) < 1e-3  # q = 0: nothing left but truncation error

    def test_linearity(self, electron_ctx, default_grid):
        p = self.params(electron_ctx, 1)
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid)
        g = landau_field(electron_ctx, QuantumNumbers(1, 1), default_grid)
        a, b = 1.3 - 0.2j, -0.7 + 2.1j
        combo = f.with_values(a * f.values + b * g.values)
        lhs = apply_transverse_operator(combo, p).values
        rhs = a * apply_transverse_operator(f, p).values \
            + b * apply_transverse_operator(g, p).values
        scale = np.max(np.abs(rhs))
        assert np.max(np.abs(lhs - rhs)) < 1e-13 * scale

    def test_self_adjoint_in_weighted_product(self, electron_ctx, default_grid):
        p = self.params(electron_ctx, 1)
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid)
        g = landau_field(electron_ctx, QuantumNumbers(2, 1), default_grid)
        # make the pair genuinely complex
        f = f.with_values(f.values * np.exp(0.3j))
        lhs = overlap(apply_transverse_operator(f, p), g)
        rhs = overlap(f, apply_transverse_operator(g, p))
        assert abs(lhs - rhs) < 1e-12 * max(abs(lhs), 1.0)

    def test_charge_conjugation_symmetry(self, default_grid):
        # flipping charge sign together with ell and s_z leaves the action invariant
        e_ctx = make_context(Species.ELECTRON, -0.5, 0.01, 1.0)
        p_ctx = make_context(Species.POSITRON, +0.5, 0.01, 1.0)
        fe = landau_field(e_ctx, QuantumNumbers(0, 1), default_grid)
        fp = landau_field(p_ctx, QuantumNumbers(0, -1), default_grid)
        te = apply_transverse_operator(fe, self.params(e_ctx, 1))
        tp = apply_transverse_operator(fp, self.params(p_ctx, -1))
        assert np.array_equal(te.values, tp.values)

    def test_ell_mismatch_rejected(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid)
        with pytest.raises(DomainError):
            apply_transverse_operator(f, self.params(electron_ctx, 0))


class TestSecondMoment:
    def test_gaussian(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 0), default_grid)
        assert second_moment(f) == pytest.approx(20.0 ** 2 / 2.0, rel=1e-6)

    def test_vortex(self, electron_ctx, default_grid):
        # (2n + |ell| + 1) w^2 / 2 at n=0, ell=1
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid)
        assert second_moment(f) == pytest.approx(20.0 ** 2, rel=1e-8)

    def test_width_doubling_quadruples(self):
        g = make_radial_grid(480.0, 4096)
        qn = QuantumNumbers(0, 0)
        narrow = sample_mode(lambda r: eval_landau_radial(qn, 20.0, r), 0, g).normalized()
        wide = sample_mode(lambda r: eval_landau_radial(qn, 40.0, r), 0, g).normalized()
        assert second_moment(wide) / second_moment(narrow) == pytest.approx(4.0, rel=1e-6)


class TestCurvatureFit:
    def gaussian_with_phase(self, grid, w, phase_fn):
        amp = np.exp(-grid.nodes ** 2 / w ** 2)
        return ComplexRadialField(grid, 0, amp * np.exp(1j * phase_fn(grid.nodes)),
                                  Carrier.PARAXIAL)

    def test_flat_wavefront_flagged(self, default_grid):
        f = self.gaussian_with_phase(default_grid, 30.0, lambda r: 0.0 * r)
        fit = radial_phase_curvature(f, 1.0)
        assert fit.is_flat and math.isinf(fit.radius)

    def test_exact_quadratic_recovered(self, default_grid):
        f = self.gaussian_with_phase(default_grid, 30.0,
                                     lambda r: 1.0 * r * r / (2.0 * 500.0))
        fit = radial_phase_curvature(f, 1.0)
        assert not fit.is_flat
        assert fit.radius == pytest.approx(500.0, rel=1e-8)
        assert fit.rms_residual < 1e-10

    def test_constant_offset_absorbed(self, default_grid):
        f = self.gaussian_with_phase(default_grid, 30.0,
                                     lambda r: 0.7 + r * r / (2.0 * 500.0))
        assert radial_phase_curvature(f, 1.0).radius == pytest.approx(500.0, rel=1e-8)

    def test_too_few_usable_nodes(self):
        g = make_radial_grid(16.0, 16)
        amp = np.zeros(16)
        amp[:4] = 1.0
        f = ComplexRadialField(g, 0, amp.astype(complex), Carrier.PARAXIAL)
        with pytest.raises(FitError):
            radial_phase_curvature(f, 1.0)


class TestCarrierConversion:
    def test_retag_at_origin(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid,
                         carrier=Carrier.FW)
        g = convert_carrier(f, 1.0, 0.0)
        assert g.carrier is Carrier.PARAXIAL
        assert np.array_equal(g.values, f.values)

    def test_round_trip_restores_phase(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid,
                         carrier=Carrier.FW)
        g = convert_carrier(convert_carrier(f, 1.0, 3.7), 1.0, 3.7)
        assert g.carrier is Carrier.FW
        assert np.max(np.abs(g.values - f.values)) < 1e-15

    def test_conversion_multiplies_carrier_phase(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid,
                         carrier=Carrier.FW)
        g = convert_carrier(f, 2.0, 1.5)
        expected = f.values * np.exp(-1j * 3.0)
        assert np.max(np.abs(g.values - expected)) < 1e-15


class TestDumpFormat:
    def test_header_and_round_trip(self, electron_ctx, default_grid, tmp_path):
        f = landau_field(electron_ctx, QuantumNumbers(0, 1), default_grid,
                         carrier=Carrier.PARAXIAL)
        path = tmp_path / "field.dat"
        dump_field(f, path, z=12.5)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# generated-by landau-paraxial v")
        assert lines[1] == ("# radial-field ell=1 carrier=paraxial n=2048 "
                            "rmax=1.6000000000000000e+02 z=1.2500000000000000e+01")
        assert len(lines) == 2 + default_grid.n_points
        assert lines[2].count(",") == 2
        back, z = load_field(path)
        assert z == 12.5
        assert back.ell == f.ell and back.carrier is f.carrier
        assert back.grid == f.grid
        assert np.array_equal(back.values, f.values)

    def test_dump_without_z(self, electron_ctx, default_grid):
        f = landau_field(electron_ctx, QuantumNumbers(0, 0), default_grid,
                         carrier=Carrier.FW)
        buf = io.StringIO()
        dump_field(f, buf)
        text = buf.getvalue()
        assert " z=" not in text
        back, z = load_field(io.StringIO(text))
        assert z is None
        assert np.array_equal(back.values, f.values)
