import numpy as np
import pytest
from numpy.testing import assert_allclose

from thinfilm.core.base import validate_params
from thinfilm.core.config import load_config
from thinfilm.diffops.base import gauss_legendre
from thinfilm.residual import base as residual
from thinfilm.residual.base import (DEFAULT_EPS, SWEEP_COLUMNS, TERMS, TermBreakdown,
                                    assemble_terms, eps_sweep_slopes, limit_residual,
                                    rescaled_gradient, scaled_sum)
from thinfilm.residual.exponents import predicted_exponent
from thinfilm.residual.testfunctions import BUNDLED_TEST_PAIRS, get_test_pair, time_bump
from thinfilm.solver.estimator import ThinFilmSolver, run
from thinfilm.utils.errors import DegenerateFitError, InsufficientResolution, MissingRateError
from thinfilm.utils.parallelism import NUM_THREADS_ENV
from tests.base import ModelTestCase, config_path


class TestRescaledGradient(ModelTestCase):
    def setup_method(self):
        super().setup_method()
        self.y, _ = gauss_legendre(8)
        self.f = np.tile(self.y ** 2, (self.grid.n, 1))

    @pytest.mark.parametrize("eps, factor", [(1.0, 2.0), (0.5, 4.0)])
    def test_flat_film(self, eps, factor):
        gx, gy = rescaled_gradient(self.f, np.ones(self.grid.n), eps, self.y)
        assert_allclose(gx, 0.0, atol=1e-12)
        assert_allclose(gy, factor * self.y[None, :] * np.ones((self.grid.n, 1)), rtol=1e-12)

    def test_curved_film(self):
        h_x = 0.3 * 2 * np.pi * np.cos(2 * np.pi * self.x)
        gx, gy = rescaled_gradient(self.f, self.h, 0.25, self.y)
        assert_allclose(gx, -2 * self.y[None, :] ** 2 * (h_x / self.h)[:, None], atol=1e-10)
        assert_allclose(gy, 8 * self.y[None, :] / self.h[:, None], rtol=1e-12)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            rescaled_gradient(self.f, -self.h, 0.5, self.y)
        with pytest.raises(ValueError):
            rescaled_gradient(self.f, self.h, 0.0, self.y)


class TestExponents:
    @pytest.mark.parametrize("term, exponent", [
        ("inertia_time", 5), ("convection", 7), ("viscous", 1), ("pressure", -2),
        ("structure_inertia", 4), ("structure_visco", 0), ("structure_bending", -2),
        ("force", -1), ("divergence_defect", 2)])
    def test_predicted_exponents(self, term, exponent):
        assert predicted_exponent(term, 1.0) == exponent

    @pytest.mark.parametrize("r, exponent", [(1.0, 0.0), (2.0, -1.0), (3.0, -2.0), (1.5, -0.5)])
    def test_viscoelastic_exponent_follows_r(self, r, exponent):
        assert predicted_exponent("structure_visco", r) == pytest.approx(exponent)

    def test_unknown_term(self):
        with pytest.raises(ValueError):
            predicted_exponent("gravity")


class TestTestFunctions(ModelTestCase):
    @pytest.mark.parametrize("pair", BUNDLED_TEST_PAIRS, ids=lambda p: p.name)
    def test_trace_matches_structure_test_function(self, pair):
        for t in np.linspace(0.0, 1.0, 7):
            assert pair.trace_defect(self.x, t, (0.0, 1.0)) <= 1e-14

    def test_bump_vanishes_at_window_ends(self):
        assert_allclose(time_bump([2.0, 5.0], 2.0, 5.0), 0.0, atol=1e-15)
        assert time_bump(3.5, 2.0, 5.0) == pytest.approx(1.0)

    def test_lookup(self):
        assert get_test_pair("two_mode").name == "two_mode"
        with pytest.raises(ValueError):
            get_test_pair("three_mode")


class TestAssembly(ModelTestCase):
    def frozen_levels(self, m=9):
        t = np.linspace(0.0, 1e-4, m)
        return t, np.tile(self.h, (m, 1)), np.zeros((m, self.grid.n))

    def test_pressure_balances_bending_at_small_eps(self):
        test = get_test_pair("single_mode")
        breakdown = assemble_terms(self.frozen_levels(), test, self.params, 1e-10,
                                   check_resolution=False)
        bending = breakdown.signed["structure_bending"]
        assert abs(bending) > 0
        assert abs(breakdown.signed["pressure"] + bending) <= 1e-8 * abs(bending)
        assert breakdown.signed["structure_inertia"] == 0.0
        assert breakdown.signed["force"] == 0.0

    def test_frozen_levels_are_resolved(self):
        breakdown = assemble_terms(self.frozen_levels(), BUNDLED_TEST_PAIRS[0], self.params, 0.125)
        assert set(breakdown.signed) == set(TERMS)
        assert breakdown.magnitudes["divergence_defect"] >= 0.0
        assert scaled_sum(breakdown) == pytest.approx(
            0.125 ** 2 * sum(breakdown.signed[t] for t in residual.WEAK_TERMS))

    def test_unresolved_levels(self):
        t = np.linspace(0.0, 1.0, 5)
        mode = 0.3 * np.sin(2 * np.pi * self.x)
        h = np.vstack([1.0 + mode * np.cos(2 * np.pi * s) for s in t])
        w = np.vstack([-2 * np.pi * mode * np.sin(2 * np.pi * s) for s in t])
        with pytest.raises(InsufficientResolution):
            assemble_terms((t, h, w), BUNDLED_TEST_PAIRS[0], self.params, 0.125)

    def test_levels_need_rates(self):
        t, h, _ = self.frozen_levels()
        with pytest.raises(MissingRateError):
            assemble_terms((t, h, None), BUNDLED_TEST_PAIRS[0], self.params, 0.125)

    def test_levels_need_increasing_times(self):
        t, h, w = self.frozen_levels()
        with pytest.raises(ValueError):
            assemble_terms((t[::-1], h, w), BUNDLED_TEST_PAIRS[0], self.params, 0.125)


class TestSweep(ModelTestCase):
    def setup_method(self):
        super().setup_method()
        self.decay = validate_params(beta=12.0, delta=12.0, r=1.0)
        self.trajectory = ThinFilmSolver(self.decay, t_end=2e-6, dt0=1e-7).run(self.grid, self.h)

    def test_exact_power_laws(self):
        table = eps_sweep_slopes(self.trajectory, self.decay, test_pairs=BUNDLED_TEST_PAIRS[:1],
                                 check_resolution=False)
        assert list(table.columns) == ["pair"] + SWEEP_COLUMNS
        assert len(table) == len(TERMS) * len(DEFAULT_EPS)

        def magnitude(term, eps):
            row = table[(table.term == term) & (table.eps == eps)]
            return float(row.magnitude.iloc[0])

        # halving eps divides the structure inertia term by 16 and multiplies bending by 4
        assert magnitude("structure_inertia", 1 / 16) == pytest.approx(
            magnitude("structure_inertia", 1 / 8) / 16, rel=1e-10)
        assert magnitude("structure_bending", 1 / 16) == pytest.approx(
            magnitude("structure_bending", 1 / 8) * 4, rel=1e-10)
        slopes = table.groupby("term").fitted_slope.first()
        assert np.isnan(slopes["force"])
        assert slopes["structure_inertia"] == pytest.approx(4.0, abs=1e-8)
        assert slopes["structure_visco"] == pytest.approx(0.0, abs=1e-8)

    def test_rejects_bad_eps_lists(self):
        for eps_list in ([1 / 8, 1 / 16, 1 / 32], [1 / 8, 1 / 16, 1 / 24, 1 / 32],
                         [2.0, 1.0, 0.5, 0.25]):
            with pytest.raises(ValueError):
                eps_sweep_slopes(self.trajectory, self.decay, eps_list=eps_list)

    def test_too_few_usable_points(self, monkeypatch):
        def sparse(test, eps, levels=None, params=None, check_resolution=True):
            signed = {term: eps for term in TERMS}
            if eps < 1 / 16:
                signed["viscous"] = 0.0
            return TermBreakdown(eps, test.name, signed)

        monkeypatch.delenv(NUM_THREADS_ENV, raising=False)
        monkeypatch.setattr(residual, "_sweep_point", sparse)
        with pytest.raises(DegenerateFitError):
            eps_sweep_slopes(self.trajectory, self.decay, test_pairs=BUNDLED_TEST_PAIRS[:1])

    def test_missing_rates(self):
        with pytest.raises(MissingRateError):
            eps_sweep_slopes((self.trajectory.times, self.trajectory.heights, None), self.decay)


@pytest.mark.slow
class TestDecaySweep:
    def setup_method(self):
        self.config = load_config(config_path("decay.ini"))
        self.trajectory = run(self.config)

    def test_slopes_match_predictions(self):
        table = eps_sweep_slopes(self.trajectory, self.config.params)
        fitted = table.dropna(subset=["fitted_slope"])
        assert set(fitted.term) >= {"viscous", "pressure", "structure_bending", "structure_inertia"}
        assert np.all(np.abs(fitted.fitted_slope - fitted.predicted_exponent) <= 0.2)

    def test_scaled_sum_closes_as_eps_shrinks(self):
        params = self.config.params
        test = get_test_pair("single_mode")
        levels = residual._levels(self.trajectory, params)
        gaps = []
        for eps in (1e-2, 1e-3, 1e-4):
            breakdown = assemble_terms(levels, test, params, eps, check_resolution=False)
            largest = max(abs(breakdown.signed[term]) for term in residual.WEAK_TERMS)
            gaps.append(abs(scaled_sum(breakdown)) / (eps ** 2 * largest))
        # the unbalanced remainder is first order in eps
        assert gaps[1] <= 0.2 * gaps[0]
        assert gaps[2] <= 0.2 * gaps[1]
        assert gaps[2] <= 1e-2
        assert limit_residual(levels, test, params)["pressure"] <= 1e-6

    @pytest.mark.parametrize("pair", BUNDLED_TEST_PAIRS, ids=lambda p: p.name)
    def test_limit_identities(self, pair):
        residuals = limit_residual(self.trajectory, pair, self.config.params)
        assert residuals["pressure"] <= 1e-6
        assert residuals["reynolds"] <= 1e-6
