# coding=utf-8
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from thinfilm.diffops.base import (GridField, PlaneField, deriv_x, gauss_legendre, grid_of,
                                   quad_unit_interval)
from thinfilm.forcing.base import eval_F, eval_Phi
from thinfilm.solver.base import pressure_of


@dataclass(frozen=True, eq=False)
class LimitFields:
    """Limit pressure and horizontal velocity on the reference strip.

    The vertical velocity vanishes identically and is not stored.
    """
    p: GridField
    v1: PlaneField
    t: float = 0.0
    v2_zero: bool = True


@dataclass(frozen=True, eq=False)
class ApproxFSI:
    """Approximate fluid-structure solution at thickness ratio ``eps``.

    Attributes
    ----------
    eps : float
        Thickness ratio in (0, 1).

    eta : ndarray of shape (n,)
        Wall displacement ``eps * h``.

    p_eps : ndarray of shape (n,)
        Pressure, equal to the limit pressure.

    v1_eps : PlaneField
        Horizontal velocity ``eps**2 * v1``.

    eta_rate : ndarray of shape (n,) or None
        Wall velocity ``eps * dh/dt``.
    """
    eps: float
    eta: np.ndarray
    p_eps: np.ndarray
    v1_eps: PlaneField
    eta_rate: Optional[np.ndarray] = None
    v2_zero: bool = True


@dataclass(frozen=True)
class DepthAverageReport:
    depth_average_residual: float
    mass_flux_residual: float


def limit_velocity(h, p, spec, t, y_nodes=None):
    """Horizontal limit velocity ``v1 = (1/2) y (y-1) h^2 p_x + h^2 F(x, y, t)``.

    Parameters
    ----------
    h, p : array-like of shape (n,)
        Height and limit pressure.

    spec : ForcingSpec

    t : float

    y_nodes : array-like, optional
        Vertical sample points in [0, 1]; the Gauss-Legendre nodes of ``spec`` by default.

    Returns
    -------
    v1 : PlaneField
    """
    grid = grid_of(h)
    h = np.asarray(h, dtype=float)
    if np.min(h) <= 0:
        raise ValueError("limit velocity needs h > 0")
    y = gauss_legendre(spec.quadrature)[0] if y_nodes is None else np.asarray(y_nodes, dtype=float)
    h2 = (h ** 2)[:, None]
    p_x = deriv_x(p, 1)[:, None]
    F = eval_F(spec, grid.nodes[:, None], y[None, :], t)
    return PlaneField(0.5 * y * (y - 1.0) * h2 * p_x + h2 * F, grid, y)


def no_slip_defect(h, p, spec, t):
    """Largest ``|v1|`` on the walls ``y = 0`` and ``y = 1``."""
    return float(np.max(np.abs(limit_velocity(h, p, spec, t, y_nodes=[0.0, 1.0]).values)))


def depth_average_check(v1, h, p, Phi, dhdt=None):
    """Check ``int_0^1 v1 dy = -(1/12) h^2 p_x + h^2 Phi`` and, given ``dhdt``, the mass-flux
    identity ``dh/dt + d/dx(h vbar) = 0``.

    ``v1`` must be sampled at Gauss-Legendre nodes.

    Returns
    -------
    report : DepthAverageReport
        Max-norm residuals; the mass-flux residual is NaN without ``dhdt``.
    """
    y, _ = gauss_legendre(v1.y.size)
    if not np.allclose(v1.y, y, rtol=0.0, atol=1e-14):
        raise ValueError("depth average needs v1 sampled at Gauss-Legendre nodes")
    h = np.asarray(h, dtype=float)
    vbar = quad_unit_interval(v1.values)
    expected = -deriv_x(p, 1) * h ** 2 / 12.0 + h ** 2 * np.asarray(Phi, dtype=float)
    residual = float(np.max(np.abs(vbar - expected)))
    flux = float("nan")
    if dhdt is not None:
        flux = float(np.max(np.abs(np.asarray(dhdt, dtype=float) + deriv_x(h * vbar, 1))))
    return DepthAverageReport(residual, flux)


def fsi_family(h, p, v1, eps, w=None):
    """Approximate solution at ``eps`` from a limit snapshot.

    Raises
    ------
    ValueError
        Unless ``0 < eps < 1``.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1), got {!r}".format(eps))
    h = np.asarray(h, dtype=float)
    return ApproxFSI(eps=float(eps), eta=eps * h, p_eps=np.asarray(p, dtype=float).copy(),
                     v1_eps=v1.scaled(eps ** 2),
                     eta_rate=None if w is None else eps * np.asarray(w, dtype=float))


def reconstruct_snapshot(state, params, y_nodes=None):
    """Limit pressure and velocity of one solver level."""
    p = pressure_of(state.h, state.w, params)
    v1 = limit_velocity(state.h, p, params.forcing, state.t, y_nodes=y_nodes)
    return LimitFields(GridField(p, state.grid), v1, t=state.t)


def snapshot_report(state, params):
    """Depth-average, mass-flux and no-slip residuals of one level."""
    fields = reconstruct_snapshot(state, params)
    Phi = eval_Phi(params.forcing, state.grid, state.t)
    report = depth_average_check(fields.v1, state.h, fields.p.values, Phi, dhdt=state.w)
    return {"t": state.t,
            "depth_average_residual": report.depth_average_residual,
            "mass_flux_residual": report.mass_flux_residual,
            "no_slip_defect": no_slip_defect(state.h, fields.p.values, params.forcing, state.t)}
