# coding=utf-8
"""Predicted eps-exponents of the weak-form terms.

Each term is written as its prefactor times the eps-powers carried by the reconstructed
fields (``v = eps^2 v1``, ``eta / eps = h``, vertical derivative ``1 / (eps h)``) times
eps-free integrals; the prediction is the smallest power of eps after expansion.
"""
from __future__ import annotations

from functools import lru_cache

import sympy as sp

EPS = sp.Symbol("eps", positive=True)
R = sp.Symbol("r", positive=True)
_C = sp.symbols("C0:4", positive=True)


def _structures():
    eps = EPS
    C0, C1, C2, C3 = _C
    v = eps ** 2
    vertical = 1 / eps
    return {
        "inertia_time": -eps ** 3 * v * C0,
        "convection": eps ** 3 * v * v * C0,
        "viscous": 2 * eps * (v * C0 + v * vertical * C1 + v * vertical ** 2 * C2),
        "pressure": -(1 / eps) * (C0 + vertical * C1),
        "structure_inertia": -eps ** 4 * C0,
        "structure_visco": -eps ** (1 - R) * C0,
        "structure_bending": eps ** -2 * C0,
        "force": (1 / eps) * C0,
        "divergence_defect": sp.sqrt(v ** 2 * C0),
    }


STRUCTURES = _structures()


@lru_cache(maxsize=None)
def predicted_exponent(term, r=1.0):
    """Leading (smallest) power of eps in the expanded structure of ``term``."""
    if term not in STRUCTURES:
        raise ValueError("unknown weak-form term {!r}".format(term))
    expr = sp.expand(STRUCTURES[term].subs(R, sp.nsimplify(r)))
    exponents = [arg.as_coeff_exponent(EPS)[1] for arg in sp.Add.make_args(expr)]
    return float(min(exponents))
