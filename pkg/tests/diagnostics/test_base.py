import numpy as np
import pytest
from numpy.testing import assert_allclose

from thinfilm.core.base import FilmState
from thinfilm.diagnostics.base import (BALANCE_COLUMNS, SERIES_COLUMNS, diagnose_trajectory,
                                       dissipation, energy, energy_balance_residual,
                                       entropy_balance_residual, forcing_power, lyapunov, mass,
                                       record_state, records_frame)
from thinfilm.solver.estimator import ThinFilmSolver
from thinfilm.utils.errors import MissingRateError
from tests.base import ModelTestCase


def residual_at(trajectory, t, residual):
    records = trajectory.diagnostics
    i = int(np.argmin([abs(r.t - t) for r in records]))
    return residual(records[i - 1:i + 2])


class TestFunctionals(ModelTestCase):
    def test_values_on_a_mode(self):
        k = 2 * np.pi
        assert_allclose(mass(self.h), 1.0, rtol=1e-14)
        assert_allclose(energy(self.h, self.params), 6.0 * 0.09 * k ** 4 / 2.0, rtol=1e-12)
        assert_allclose(dissipation(self.h, self.params), 12.0 * 0.09 * k ** 6 / 2.0, rtol=1e-12)

    def test_lyapunov_of_constant_film(self):
        assert_allclose(lyapunov(np.full(self.grid.n, 2.0), self.params_chi), 3.0, rtol=1e-14)
        with pytest.raises(ValueError):
            lyapunov(np.zeros(self.grid.n), self.params)

    def test_forcing_power(self):
        Phi = np.cos(2 * np.pi * self.x)
        # 12 int cos(2 pi x) * 0.3 * 2 pi cos(2 pi x) dx
        assert_allclose(forcing_power(self.h, Phi), 12 * 0.3 * np.pi, rtol=1e-12)

    def test_record_needs_rate_for_chi(self):
        state = FilmState(0.0, self.h, self.grid)
        record = record_state(state, self.params_chi, np.zeros(self.grid.n))
        assert np.isnan(record.visco_dissipation)
        assert np.isnan(record.dt)


class TestBalances(ModelTestCase):
    def test_steady_state_residuals_vanish(self):
        trajectory = ThinFilmSolver(self.params, t_end=1e-6, dt0=1e-7).run(
            self.grid, np.ones(self.grid.n))
        frame = records_frame(trajectory.diagnostics, self.params)
        assert list(trajectory.series_frame().columns) == SERIES_COLUMNS
        assert list(trajectory.balance_frame().columns) == BALANCE_COLUMNS
        assert frame["entropy_residual"].dropna().max() <= 1e-12
        assert frame["energy_residual"].dropna().max() <= 1e-12

    def test_nonuniform_window_rejected(self):
        trajectory = ThinFilmSolver(self.params, t_end=1.05e-7, dt0=1e-8).run(self.grid, self.h)
        with pytest.raises(ValueError):
            entropy_balance_residual(trajectory.diagnostics[-3:])

    def test_energy_balance_needs_rate(self):
        states = [FilmState(t, self.h, self.grid) for t in (0.0, 1e-6, 2e-6)]
        records = [record_state(s, self.params_chi, np.zeros(self.grid.n)) for s in states]
        with pytest.raises(MissingRateError):
            energy_balance_residual(records, self.params_chi)

    def test_diagnose_matches_run(self):
        trajectory = ThinFilmSolver(self.params, t_end=1e-6, dt0=1e-8).run(self.grid, self.h)
        frame = diagnose_trajectory(trajectory.times, trajectory.heights, trajectory.rates,
                                    self.params)
        assert_allclose(frame["lyapunov"], trajectory.series_frame()["lyapunov"], rtol=1e-14)
        interior = frame["entropy_residual"].iloc[1:-1]
        assert np.all(np.isfinite(interior))

    @pytest.mark.slow
    def test_entropy_balance_converges_at_second_order(self):
        residuals = []
        for dt in (1e-7, 5e-8, 2.5e-8):
            trajectory = ThinFilmSolver(self.params, t_end=1e-5, dt0=dt).run(self.grid, self.h)
            residuals.append(residual_at(trajectory, 5e-6, entropy_balance_residual))
        orders = np.log2(np.array(residuals[:-1]) / np.array(residuals[1:]))
        assert orders.min() >= 2 - 0.2

    @pytest.mark.slow
    def test_energy_balance_converges_at_scheme_order(self):
        residuals = []
        for dt in (1e-7, 5e-8, 2.5e-8):
            trajectory = ThinFilmSolver(self.params, t_end=1e-5, dt0=dt).run(self.grid, self.h)
            residuals.append(residual_at(trajectory, 5e-6,
                                         lambda r: energy_balance_residual(r, self.params)))
        orders = np.log2(np.array(residuals[:-1]) / np.array(residuals[1:]))
        assert orders.min() >= 2 - 0.2

    @pytest.mark.slow
    def test_wall_viscosity_balances(self):
        trajectory = ThinFilmSolver(self.params_chi, t_end=2e-3, dt0=1e-5).run(self.grid, self.h)
        series = trajectory.series_frame()
        assert np.all(np.diff(series["lyapunov"]) <= 1e-8)
        frame = trajectory.balance_frame()
        scale = frame["fluid_dissipation"].abs().max()
        assert frame["energy_residual"].dropna().max() <= 1e-2 * scale
