import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from thinfilm.utils.base import loglog_slope, observed_orders, relative_change, \
    self_convergence_errors
from thinfilm.utils.errors import ConfigError, PositivityViolation
from thinfilm.utils.parallelism import NUM_THREADS_ENV, SweepParallel, default_n_jobs
from thinfilm.utils.validation import check_geometric, check_integer, check_positive, check_values


def scaled_power(base, exponent, factor=1.0):
    return factor * base ** exponent


class TestFits:
    def test_loglog_slope_recovers_power(self):
        x = np.array([1 / 8, 1 / 16, 1 / 32, 1 / 64])
        slope, used = loglog_slope(x, 3.0 * x ** -2)
        assert used == 4
        assert_allclose(slope, -2.0, rtol=1e-12)

    def test_loglog_slope_skips_zero_entries(self):
        x = np.array([1.0, 0.5, 0.25, 0.125, 0.0625])
        y = x ** 3
        y[1] = 0.0
        slope, used = loglog_slope(x, y)
        assert used == 4
        assert_allclose(slope, 3.0, rtol=1e-12)

    def test_loglog_slope_is_nan_without_data(self):
        slope, used = loglog_slope([1.0, 0.5], [0.0, 0.0])
        assert np.isnan(slope)
        assert used == 0

    def test_observed_orders(self):
        errors = np.array([1e-2, 2.5e-3, 6.25e-4])
        assert_allclose(observed_orders(errors), [2.0, 2.0])

    def test_self_convergence_errors(self):
        solutions = [np.array([1.0, 2.0]), np.array([1.5, 2.0]), np.array([1.5, 2.25])]
        assert_allclose(self_convergence_errors(solutions), [0.5, 0.25])

    def test_relative_change_uses_floor(self):
        assert_allclose(relative_change(2.0, 1.0), 0.5)
        assert_allclose(relative_change(0.0, 1e-14, floor=1e-6), 1e-8)


class TestValidation:
    def test_check_values_rejects_nan(self):
        with pytest.raises(ValueError):
            check_values([1.0, np.nan])

    def test_check_values_checks_length(self):
        with pytest.raises(ValueError):
            check_values(np.ones(4), n=8)

    def test_check_positive(self):
        assert check_positive(2, "beta") == 2.0
        with pytest.raises(ValueError):
            check_positive(0.0, "beta")
        assert check_positive(0.0, "delta", strict=False) == 0.0
        with pytest.raises(ValueError):
            check_positive(True, "beta")

    def test_check_integer(self):
        assert check_integer(4.0, "n") == 4
        with pytest.raises(ValueError):
            check_integer(4.5, "n")
        with pytest.raises(ValueError):
            check_integer(1, "n", minimum=2)

    def test_check_geometric(self):
        values = check_geometric([1 / 8, 1 / 16, 1 / 32, 1 / 64])
        assert_array_equal(values, [1 / 8, 1 / 16, 1 / 32, 1 / 64])
        with pytest.raises(ValueError):
            check_geometric([1 / 8, 1 / 16, 1 / 32])
        with pytest.raises(ValueError):
            check_geometric([1 / 8, 1 / 16, 1 / 24, 1 / 64])


class TestErrors:
    def test_config_error_message_has_line(self):
        error = ConfigError("section [params] is missing required key 'beta'", "decay.ini", 3)
        assert str(error) == "decay.ini:3: section [params] is missing required key 'beta'"
        assert isinstance(error, ValueError)

    def test_positivity_violation_fields(self):
        error = PositivityViolation(3, 0.375, 1e-4, 1e-9, 1e-8)
        assert error.node == 3
        assert error.last_good_time is None
        assert "node 3" in str(error)


class TestSweepParallel:
    def test_local_map_keeps_order_and_unpacks_tuples(self):
        jobs = [(2.0, 1), (3.0, 2), (4.0, 3)]
        results = SweepParallel(scaled_power, jobs, constant_named_params={"factor": 2.0},
                                local=True).retrieve()
        assert results == [4.0, 18.0, 128.0]

    def test_joblib_map_matches_local(self):
        jobs = [(float(b), 2) for b in range(6)]
        local = SweepParallel(scaled_power, jobs, local=True).retrieve(as_array=True)
        parallel = SweepParallel(scaled_power, jobs, n_jobs=2, backend="threading").retrieve(
            as_array=True)
        assert_array_equal(local, parallel)

    def test_default_n_jobs_reads_environment(self, monkeypatch):
        monkeypatch.delenv(NUM_THREADS_ENV, raising=False)
        assert default_n_jobs() == 1
        monkeypatch.setenv(NUM_THREADS_ENV, "3")
        assert default_n_jobs() == 3
        assert default_n_jobs(2) == 2
        monkeypatch.setenv(NUM_THREADS_ENV, "many")
        with pytest.raises(ValueError):
            default_n_jobs()
