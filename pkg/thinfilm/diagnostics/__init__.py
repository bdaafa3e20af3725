from .base import (DiagnosticsRecord, mass, min_height, lyapunov, energy, dissipation,
                   forcing_power, record_state, entropy_balance_residual,
                   energy_balance_residual, balance_series, records_frame, diagnose_trajectory)

__all__ = ["DiagnosticsRecord",
           "mass",
           "min_height",
           "lyapunov",
           "energy",
           "dissipation",
           "forcing_power",
           "record_state",
           "entropy_balance_residual",
           "energy_balance_residual",
           "balance_series",
           "records_frame",
           "diagnose_trajectory"]
