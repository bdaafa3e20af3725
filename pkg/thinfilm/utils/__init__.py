from .errors import (ThinFilmError, ConfigError, PositivityViolation, InnerSolverDivergence,
                     UnrecoverableStep, DegenerateFitError, InsufficientResolution,
                     MissingRateError)
from .parallelism import SweepParallel

__all__ = ["ThinFilmError",
           "ConfigError",
           "PositivityViolation",
           "InnerSolverDivergence",
           "UnrecoverableStep",
           "DegenerateFitError",
           "InsufficientResolution",
           "MissingRateError",
           "SweepParallel"]
