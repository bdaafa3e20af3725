from .base import ForcingSpec, eval_F, eval_Phi, PotentialCache

__all__ = ["ForcingSpec",
           "eval_F",
           "eval_Phi",
           "PotentialCache"]
