from .base import (pressure_of, flux_of, explicit_rate, thin_film_rate, expanded_rate,
                   dispersion_rate, step)
from .implicit import implicit_wdot_solve
from .estimator import ThinFilmSolver, Trajectory, default_dt0, load_trajectory, run

__all__ = ["pressure_of",
           "flux_of",
           "explicit_rate",
           "thin_film_rate",
           "expanded_rate",
           "dispersion_rate",
           "step",
           "implicit_wdot_solve",
           "ThinFilmSolver",
           "Trajectory",
           "default_dt0",
           "load_trajectory",
           "run"]
