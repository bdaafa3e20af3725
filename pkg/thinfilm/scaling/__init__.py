from .base import (PhysicalParams, DimensionlessNumbers, bending_stiffness, wall_viscosity,
                   length_scale, fit_r, dimensionless_numbers, inertia_cross_check, groups_table,
                   solver_config, parse_physical_params, load_physical_params, consistent_device)

__all__ = ["PhysicalParams",
           "DimensionlessNumbers",
           "bending_stiffness",
           "wall_viscosity",
           "length_scale",
           "fit_r",
           "dimensionless_numbers",
           "inertia_cross_check",
           "groups_table",
           "solver_config",
           "parse_physical_params",
           "load_physical_params",
           "consistent_device"]
