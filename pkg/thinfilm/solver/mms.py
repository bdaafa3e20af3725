# coding=utf-8
"""Manufactured-solution checks of the discrete right-hand side and self-convergence in time."""
from __future__ import annotations

import logging

import numpy as np
import pandas as pd
import sympy as sp
from sklearn.base import clone

from thinfilm.core.base import build_grid
from thinfilm.core.expression import X, parse_expression
from thinfilm.solver.base import explicit_rate
from thinfilm.solver.estimator import ThinFilmSolver
from thinfilm.solver.implicit import implicit_wdot_solve, rate_operator
from thinfilm.utils.base import observed_orders, self_convergence_errors

logger = logging.getLogger(__name__)

DEFAULT_H = "1 + 0.2*exp(sin(2*pi*x)) - 0.1*cos(4*pi*x)"
DEFAULT_W = "exp(cos(2*pi*x)) - 0.3*sin(6*pi*x)"
DEFAULT_PHI = "0.5*sin(2*pi*x) + 0.2*cos(2*pi*x)^2"
DEFAULT_H0 = "1 + 0.3*sin(2*pi*x)"


def exact_explicit_rate(h_expr, phi_expr, params):
    """Symbolic ``d/dx(h^3 ((beta/12) h_xxxxx - Phi))``."""
    h = parse_expression(h_expr).expr
    phi = parse_expression(phi_expr).expr
    beta = sp.nsimplify(params.beta)
    return sp.diff(h ** 3 * (beta / 12 * sp.diff(h, X, 5) - phi), X)


def exact_rate_operator(h_expr, w_expr, params):
    """Symbolic ``w + (delta/12) d/dx(h^3 w_xxx)``."""
    h = parse_expression(h_expr).expr
    w = parse_expression(w_expr).expr
    delta = sp.nsimplify(params.delta)
    return w + delta / 12 * sp.diff(h ** 3 * sp.diff(w, X, 3), X)


def spatial_convergence(params, ns=(16, 24, 32, 48, 64), h_expr=DEFAULT_H, phi_expr=DEFAULT_PHI,
                        w_expr=DEFAULT_W):
    """Max-norm errors of the discrete rate against its symbolic value on refined grids.

    With ``delta > 0`` the implicit rate solve is checked as well: the symbolic operator is
    applied to ``w_expr`` and the discrete solve must recover ``w_expr``.

    Returns
    -------
    table : pandas.DataFrame
        Columns ``n``, ``rate_error``, ``solve_error`` (NaN when ``delta == 0``).
    """
    rate = sp.lambdify(X, exact_explicit_rate(h_expr, phi_expr, params), modules="numpy")
    operator = sp.lambdify(X, exact_rate_operator(h_expr, w_expr, params), modules="numpy")
    h_fn = parse_expression(h_expr)
    w_fn = parse_expression(w_expr)
    phi_fn = parse_expression(phi_expr)
    rows = []
    for n in ns:
        grid = build_grid(n)
        x = grid.nodes
        h = h_fn(x)
        error = np.max(np.abs(explicit_rate(h, phi_fn(x), params) - rate(x)))
        solve_error = np.nan
        if params.delta > 0:
            w_exact = w_fn(x)
            b = np.broadcast_to(operator(x), x.shape)
            w = implicit_wdot_solve(h, b, params, tol=min(params.newton_tol, 1e-12))
            solve_error = np.max(np.abs(w - w_exact))
        logger.info("n = %d: rate error %.3e, solve error %.3e", n, error, solve_error)
        rows.append({"n": n, "rate_error": error, "solve_error": solve_error})
    return pd.DataFrame(rows, columns=["n", "rate_error", "solve_error"])


def operator_residual(h, w, params):
    """Discrete ``w + (delta/12) d/dx(h^3 w_xxx)``, exposed for dense-assembly checks."""
    return rate_operator(h, params.delta)(w)


def temporal_convergence(params, scheme="BDF2", dts=(2e-6, 1e-6, 5e-7, 2.5e-7), t_end=1e-4, n=32,
                         h0_expr=DEFAULT_H0):
    """Self-convergence of the time integration under step halving.

    Returns
    -------
    table : pandas.DataFrame
        Columns ``dt``, ``error`` (max-norm difference to the next finer run) and ``order``.
    """
    grid = build_grid(n)
    h0 = parse_expression(h0_expr)(grid.nodes)
    template = ThinFilmSolver(params, t_end=t_end, scheme=scheme)
    finals = []
    for dt in dts:
        solver = clone(template).set_params(dt0=dt, output_every=int(round(t_end / dt)) + 1)
        trajectory = solver.run(grid, h0)
        finals.append(trajectory.snapshots[-1].h)
    errors = self_convergence_errors(finals)
    orders = observed_orders(errors, ratio=dts[0] / dts[1]) if len(errors) > 1 else np.array([])
    return pd.DataFrame({"dt": list(dts),
                         "error": list(errors) + [np.nan],
                         "order": [np.nan] + list(orders) + [np.nan]})
