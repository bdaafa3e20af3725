from .base import (LimitFields, ApproxFSI, DepthAverageReport, limit_velocity, no_slip_defect,
                   depth_average_check, fsi_family, reconstruct_snapshot, snapshot_report)

__all__ = ["LimitFields",
           "ApproxFSI",
           "DepthAverageReport",
           "limit_velocity",
           "no_slip_defect",
           "depth_average_check",
           "fsi_family",
           "reconstruct_snapshot",
           "snapshot_report"]
