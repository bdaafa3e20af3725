from .base import (GridField, PlaneField, deriv_x, deriv_y, mean_integral, flux_divergence,
                   quad_unit_interval, gauss_legendre, legendre_diff_matrix, wavenumbers,
                   dealiased_product, cubed_times, grid_of)

__all__ = ["GridField",
           "PlaneField",
           "deriv_x",
           "deriv_y",
           "mean_integral",
           "flux_divergence",
           "quad_unit_interval",
           "gauss_legendre",
           "legendre_diff_matrix",
           "wavenumbers",
           "dealiased_product",
           "cubed_times",
           "grid_of"]
