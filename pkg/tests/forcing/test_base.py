import numpy as np
import pytest
from numpy.testing import assert_allclose

from thinfilm.forcing.base import ForcingSpec, PotentialCache, eval_F, eval_Phi
from tests.base import ModelTestCase


class TestForcing(ModelTestCase):
    def test_constant_force_potential(self):
        spec = ForcingSpec.from_text("12")
        assert_allclose(eval_Phi(spec, self.grid, 0.0), -1.0, rtol=0, atol=1e-12)

    def test_profile_of_constant_force(self):
        spec = ForcingSpec.from_text("12")
        y = np.linspace(0, 1, 11)
        assert_allclose(eval_F(spec, 0.3, y, 0.0), 6 * y * (y - 1), atol=1e-13)

    def test_profile_of_linear_force(self):
        spec = ForcingSpec.from_text("y")
        y = np.linspace(0, 1, 11)
        assert_allclose(eval_F(spec, 0.0, y, 0.0), (y ** 3 - y) / 6.0, atol=1e-14)

    def test_profile_vanishes_on_walls(self):
        F = eval_F(self.forced.forcing, self.x, np.array([0.0, 1.0])[:, None], 0.0)
        assert_allclose(F, 0.0, atol=1e-13)

    def test_rejects_y_outside_strip(self):
        with pytest.raises(ValueError):
            eval_F(self.forced.forcing, 0.0, 1.5, 0.0)

    def test_zero_forcing(self):
        spec = ForcingSpec.zero()
        assert spec.is_zero
        assert_allclose(eval_Phi(spec, self.grid, 1.0), 0.0)

    def test_non_finite_forcing_rejected(self):
        with pytest.raises(ValueError):
            ForcingSpec.from_text("1/x")

    def test_bound(self):
        ForcingSpec.from_text("12*sin(2*pi*x)", bound=12.0)
        with pytest.raises(ValueError):
            ForcingSpec.from_text("12*sin(2*pi*x)", bound=6.0)

    def test_potential_cache(self):
        static = PotentialCache(ForcingSpec.from_text("12*cos(2*pi*x)"), self.grid)
        assert static(0.0) is static(1.0)
        assert_allclose(static(0.5), -np.cos(2 * np.pi * self.x), atol=1e-12)
        moving = PotentialCache(ForcingSpec.from_text("12*t"), self.grid)
        assert moving.spec.time_dependent
        assert_allclose(moving(0.5), -0.5, atol=1e-12)
        assert_allclose(moving(2.0), -2.0, atol=1e-12)
