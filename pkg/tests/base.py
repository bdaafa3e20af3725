import os

import numpy as np

from thinfilm.core.base import build_grid, validate_params
from thinfilm.forcing.base import ForcingSpec

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                          "thinfilm", "data", "configs")


def config_path(name):
    return os.path.join(CONFIG_DIR, name)


class ModelTestCase:
    def setup_method(self):
        self.grid = build_grid(32)
        self.x = self.grid.nodes
        self.h = 1.0 + 0.3 * np.sin(2 * np.pi * self.x)
        self.params = validate_params(beta=12.0, delta=0.0, r=1.0)
        self.params_chi = validate_params(beta=12.0, delta=12.0, r=3.0)
        self.forced = validate_params(beta=12.0, delta=0.0, r=1.0,
                                      forcing=ForcingSpec.from_text("12*cos(2*pi*x) + y"))
