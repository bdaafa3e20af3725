import numpy as np
import pytest
from numpy.testing import assert_allclose

from thinfilm.core.base import FilmState, build_grid, validate_params
from thinfilm.diffops.base import deriv_x
from thinfilm.forcing.base import ForcingSpec, eval_Phi
from thinfilm.reconstruct.base import (depth_average_check, fsi_family, limit_velocity,
                                       no_slip_defect, reconstruct_snapshot, snapshot_report)
from thinfilm.solver.base import pressure_of, thin_film_rate
from tests.base import ModelTestCase


class TestLimitVelocity(ModelTestCase):
    def test_parabolic_profile_without_forcing(self):
        p = pressure_of(self.h, None, self.params)
        v1 = limit_velocity(self.h, p, self.params.forcing, 0.0, y_nodes=[0.0, 0.5, 1.0])
        expected = -self.h ** 2 * deriv_x(p, 1) / 8.0
        assert_allclose(v1.values[:, 1], expected, rtol=1e-12, atol=1e-12)
        assert_allclose(v1.values[:, [0, 2]], 0.0, atol=1e-12)

    @pytest.mark.parametrize("text", ["0", "12*cos(2*pi*x) + y", "y*(1 - y)*sin(2*pi*x)"])
    def test_no_slip(self, text):
        spec = ForcingSpec.from_text(text)
        params = validate_params(beta=12.0, delta=0.0, r=1.0, forcing=spec)
        p = pressure_of(self.h, None, params)
        assert no_slip_defect(self.h, p, spec, 0.0) <= 1e-12

    def test_nonpositive_height_rejected(self):
        with pytest.raises(ValueError):
            limit_velocity(self.h - 2.0, np.zeros(self.grid.n), self.params.forcing, 0.0)


class TestDepthAverage:
    @pytest.mark.parametrize("text", ["0", "y*(1 - y)", "12*cos(2*pi*x) + y"])
    def test_depth_average_matches_flux_velocity(self, text):
        grid = build_grid(128)
        h = 1.0 + 0.1 * np.sin(2 * np.pi * grid.nodes)
        spec = ForcingSpec.from_text(text, quadrature=16)
        params = validate_params(beta=12.0, delta=0.0, r=1.0, forcing=spec)
        p = pressure_of(h, None, params)
        v1 = limit_velocity(h, p, spec, 0.0)
        report = depth_average_check(v1, h, p, eval_Phi(spec, grid, 0.0))
        assert report.depth_average_residual <= 1e-10
        assert np.isnan(report.mass_flux_residual)

    def test_needs_gauss_legendre_nodes(self):
        grid = build_grid(16)
        h = np.ones(grid.n)
        spec = ForcingSpec.zero()
        v1 = limit_velocity(h, np.zeros(grid.n), spec, 0.0, y_nodes=np.linspace(0, 1, 16))
        with pytest.raises(ValueError):
            depth_average_check(v1, h, np.zeros(grid.n), np.zeros(grid.n))


class TestSnapshot(ModelTestCase):
    def test_report_of_forced_level(self):
        state = FilmState(0.0, self.h, self.grid)
        Phi = eval_Phi(self.forced.forcing, self.grid, 0.0)
        state = state.with_rate(thin_film_rate(self.h, Phi, self.forced))
        report = snapshot_report(state, self.forced)
        scale = np.max(np.abs(state.w))
        assert report["t"] == 0.0
        assert report["no_slip_defect"] <= 1e-12
        assert report["depth_average_residual"] <= 1e-9
        assert report["mass_flux_residual"] <= 1e-10 * scale

    def test_reconstruct_keeps_grid(self):
        state = FilmState(0.5, self.h, self.grid, np.zeros(self.grid.n))
        fields = reconstruct_snapshot(state, self.params)
        assert fields.t == 0.5
        assert fields.v2_zero
        assert fields.v1.values.shape == (self.grid.n, self.params.forcing.quadrature)


class TestFSIFamily(ModelTestCase):
    def setup_method(self):
        super().setup_method()
        self.p = pressure_of(self.h, None, self.params)
        self.v1 = limit_velocity(self.h, self.p, self.params.forcing, 0.0)

    def test_scaling(self):
        w = np.cos(2 * np.pi * self.x)
        approx = fsi_family(self.h, self.p, self.v1, 0.25, w=w)
        assert_allclose(approx.eta, 0.25 * self.h)
        assert_allclose(approx.p_eps, self.p)
        assert_allclose(approx.v1_eps.values, self.v1.values / 16.0)
        assert_allclose(approx.eta_rate, 0.25 * w)
        assert approx.v2_zero

    def test_without_rate(self):
        assert fsi_family(self.h, self.p, self.v1, 0.5).eta_rate is None

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.1, 2.0])
    def test_eps_range(self, eps):
        with pytest.raises(ValueError):
            fsi_family(self.h, self.p, self.v1, eps)
