from .base import (TERMS, WEAK_TERMS, DEFAULT_EPS, TermBreakdown, rescaled_gradient,
                   assemble_terms, eps_sweep_slopes, limit_residual, scaled_sum)
from .exponents import predicted_exponent
from .testfunctions import (TEST_SET_VERSION, BUNDLED_TEST_PAIRS, TestFunctionPair, TrigSeries,
                            get_test_pair)

__all__ = ["TERMS",
           "WEAK_TERMS",
           "DEFAULT_EPS",
           "TermBreakdown",
           "rescaled_gradient",
           "assemble_terms",
           "eps_sweep_slopes",
           "limit_residual",
           "scaled_sum",
           "predicted_exponent",
           "TEST_SET_VERSION",
           "BUNDLED_TEST_PAIRS",
           "TestFunctionPair",
           "TrigSeries",
           "get_test_pair"]
