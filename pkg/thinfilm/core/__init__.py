from .base import (PeriodicGrid, FilmState, ModelParams, RunConfig, InitialSpec, build_grid,
                   validate_params)
from .config import load_config, parse_config, dump_config
from .expression import Expression, parse_expression

__all__ = ["PeriodicGrid",
           "FilmState",
           "ModelParams",
           "RunConfig",
           "InitialSpec",
           "build_grid",
           "validate_params",
           "load_config",
           "parse_config",
           "dump_config",
           "Expression",
           "parse_expression"]
