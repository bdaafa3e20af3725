# coding=utf-8
"""Weak-form residual harness.

The terms of the rescaled weak formulation are evaluated on approximate solutions rebuilt from
a thin-film trajectory, for a sweep of thickness ratios ``eps``; each term's log-log slope is
compared with its symbolically predicted exponent.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
import pandas as pd
from scipy.integrate import simpson

from thinfilm.diffops.base import (PlaneField, deriv_x, deriv_y, gauss_legendre, grid_of,
                                   mean_integral, quad_unit_interval)
from thinfilm.forcing.base import PotentialCache
from thinfilm.reconstruct.base import fsi_family, limit_velocity
from thinfilm.residual.exponents import predicted_exponent
from thinfilm.residual.testfunctions import BUNDLED_TEST_PAIRS
from thinfilm.solver.base import flux_of, pressure_of
from thinfilm.utils.base import loglog_slope, relative_change
from thinfilm.utils.errors import (DegenerateFitError, InsufficientResolution,
                                   MissingRateError)
from thinfilm.utils.parallelism import SweepParallel
from thinfilm.utils.validation import check_geometric

logger = logging.getLogger(__name__)

WEAK_TERMS = ("inertia_time", "convection", "viscous", "pressure", "structure_inertia",
              "structure_visco", "structure_bending", "force")
TERMS = WEAK_TERMS + ("divergence_defect",)
DEFAULT_EPS = (1 / 8, 1 / 16, 1 / 32, 1 / 64, 1 / 128)
MIN_FIT_POINTS = 4
RESOLUTION_TOLERANCE = 0.01
SWEEP_COLUMNS = ["term", "eps", "magnitude", "predicted_exponent", "fitted_slope"]


@dataclass
class TermBreakdown:
    """Weak-form terms at one ``eps`` for one test pair.

    Attributes
    ----------
    eps : float

    pair : str
        Name of the test pair.

    signed : dict
        Signed value of every term in :data:`TERMS`, prefactors included.

    slopes : dict or None
        Fitted log-log slope per term, filled in by :func:`eps_sweep_slopes`.
    """
    eps: float
    pair: str
    signed: Dict[str, float]
    slopes: Optional[Dict[str, float]] = field(default=None)

    @property
    def magnitudes(self):
        return {term: abs(value) for term, value in self.signed.items()}


@dataclass(frozen=True)
class Levels:
    """Stored levels of a trajectory with their limit fields."""
    t: np.ndarray
    h: np.ndarray
    w: np.ndarray
    p: np.ndarray
    v1: tuple

    @property
    def window(self):
        return float(self.t[0]), float(self.t[-1])


def rescaled_gradient(f, h, eps, y=None):
    """Rescaled gradient ``(d_x - y (h_x/h) d_y, d_y / (eps h))`` of a field on the strip.

    Parameters
    ----------
    f : PlaneField or array-like of shape (n, Q)
        Samples at the Gauss-Legendre nodes in ``y``.

    h : array-like of shape (n,)
        Positive rescaled height.

    eps : float
        Thickness ratio, > 0.

    Returns
    -------
    gx, gy : ndarray of shape (n, Q)
    """
    if isinstance(f, PlaneField):
        y = f.y
        f = f.values
    f = np.asarray(f, dtype=float)
    if y is None:
        y = gauss_legendre(f.shape[1])[0]
    h = np.asarray(h, dtype=float)
    if np.min(h) <= 0:
        raise ValueError("rescaled gradient needs h > 0")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    f_y = deriv_y(f)
    slope = (deriv_x(h, 1) / h)[:, None]
    return deriv_x(f, 1) - y[None, :] * slope * f_y, f_y / (eps * h[:, None])


def _levels(trajectory, params):
    """Normalize a Trajectory or a ``(t, h, w)`` triple and reconstruct the limit fields."""
    if isinstance(trajectory, tuple):
        t, h, w = trajectory
    else:
        t, h, w = trajectory.times, trajectory.heights, trajectory.rates
    t = np.asarray(t, dtype=float)
    h = np.asarray(h, dtype=float)
    if w is None:
        raise MissingRateError("the residual harness needs the stored height rates")
    w = np.asarray(w, dtype=float)
    if t.size < 3 or np.any(np.diff(t) <= 0):
        raise ValueError("need at least 3 levels with strictly increasing times")
    p = np.vstack([pressure_of(h[i], w[i], params) for i in range(t.size)])
    v1 = tuple(limit_velocity(h[i], p[i], params.forcing, t[i]) for i in range(t.size))
    return Levels(t, h, w, p, v1)


def _space_terms(approx, h, t, test, window, params, f1):
    """Space integrals of all terms at one level (prefactors included)."""
    eps = approx.eps
    y = approx.v1_eps.y
    V = approx.v1_eps.values
    weight = (approx.eta / eps)[:, None]
    T = test.evaluate(approx.v1_eps.grid.nodes, y, t, window)
    slope = (deriv_x(h, 1) / h)[:, None]
    vertical = 1.0 / (eps * weight)

    gxV, gyV = rescaled_gradient(V, h, eps, y)
    gx1 = T.phi1_x - y * slope * T.phi1_y
    gy1 = T.phi1_y * vertical
    gx2 = T.phi2_x - y * slope * T.phi2_y
    gy2 = T.phi2_y * vertical

    def strip(integrand):
        return mean_integral(quad_unit_interval(integrand * weight))

    if approx.eta_rate is None:
        raise MissingRateError("structure terms need the wall velocity")
    w = approx.eta_rate / eps
    p = approx.p_eps[:, None]
    return {
        "inertia_time": -eps ** 3 * strip(V * T.phi1_t),
        "convection": eps ** 3 * strip(V * gxV * T.phi1),
        "viscous": 2.0 * eps * strip(gxV * gx1 + 0.5 * gyV * (gy1 + gx2)),
        "pressure": -strip(p * (gx1 + gy2)) / eps,
        "structure_inertia": -params.rho * eps ** 4 * mean_integral(w * T.psi_t),
        "structure_visco": -params.delta * eps ** (1.0 - params.r) * mean_integral(w * T.psi_xx),
        "structure_bending": params.beta * eps ** -2 * mean_integral(deriv_x(h, 2) * T.psi_xx),
        "force": strip(f1 * T.phi1) / eps,
        "divergence_defect": strip(gxV ** 2),
    }


def _time_integrals(rows, t):
    out = {}
    for term in TERMS:
        values = np.array([row[term] for row in rows])
        out[term] = float(simpson(values, x=t))
    out["divergence_defect"] = float(np.sqrt(max(out["divergence_defect"], 0.0)))
    return out


def _coarse_indices(size):
    indices = np.arange(0, size, 2)
    if indices[-1] != size - 1:
        indices = np.append(indices, size - 1)
    return indices


def assemble_terms(levels, test, params, eps, check_resolution=True):
    """Evaluate every weak-form term over the whole window of ``levels`` at one ``eps``.

    Space integrals use the periodic trapezoid rule in x and Gauss-Legendre in y; the time
    integral is composite Simpson over the stored levels.

    Raises
    ------
    InsufficientResolution
        If dropping every other level changes any term by more than 1%.
    """
    if not isinstance(levels, Levels):
        levels = _levels(levels, params)
    window = levels.window
    y = levels.v1[0].y
    grid = grid_of(levels.h[0])
    rows = []
    for i, t in enumerate(levels.t):
        approx = fsi_family(levels.h[i], levels.p[i], levels.v1[i], eps, w=levels.w[i])
        f1 = params.forcing.f1(grid.nodes[:, None], y[None, :], t)
        rows.append(_space_terms(approx, levels.h[i], t, test, window, params, f1))
    signed = _time_integrals(rows, levels.t)

    if check_resolution:
        coarse_idx = _coarse_indices(levels.t.size)
        coarse = _time_integrals([rows[i] for i in coarse_idx], levels.t[coarse_idx])
        scale = max(abs(v) for v in signed.values())
        for term in TERMS:
            change = relative_change(signed[term], coarse[term], floor=1e-12 * scale)
            if change > RESOLUTION_TOLERANCE:
                raise InsufficientResolution(
                    "term {} changes by {:.2%} when every other level is dropped (eps = {}, "
                    "pair {})".format(term, float(change), eps, test.name))
    return TermBreakdown(eps=float(eps), pair=test.name, signed=signed)


def scaled_sum(breakdown):
    """``eps^2`` times the signed sum of all weak-form terms."""
    return breakdown.eps ** 2 * sum(breakdown.signed[term] for term in WEAK_TERMS)


def _sweep_point(test, eps, levels=None, params=None, check_resolution=True):
    return assemble_terms(levels, test, params, eps, check_resolution=check_resolution)


def eps_sweep_slopes(trajectory, params, eps_list=DEFAULT_EPS, test_pairs=BUNDLED_TEST_PAIRS,
                     n_jobs=None, check_resolution=True):
    """Weak-form terms over an eps sweep and their fitted log-log slopes.

    Parameters
    ----------
    trajectory : Trajectory or tuple (t, h, w)
        Levels with stored height rates.

    params : ModelParams

    eps_list : sequence of float
        Geometric progression of at least 4 values.

    test_pairs : sequence of TestFunctionPair

    n_jobs : int, optional
        Workers for the sweep; ``THINFILM_NUM_THREADS`` or 1 by default.

    Returns
    -------
    table : pandas.DataFrame
        Columns ``pair``, ``term``, ``eps``, ``magnitude``, ``predicted_exponent`` and
        ``fitted_slope`` (NaN for terms that vanish identically).

    Raises
    ------
    DegenerateFitError
        If an active term has fewer than 4 usable (nonzero, finite) points.
    """
    eps_list = check_geometric(eps_list, minimum=MIN_FIT_POINTS)
    if np.any(eps_list >= 1.0):
        raise ValueError("eps values must lie in (0, 1)")
    levels = _levels(trajectory, params)
    jobs = [(test, float(eps)) for test in test_pairs for eps in eps_list]
    breakdowns = SweepParallel(_sweep_point, jobs,
                               constant_named_params={"levels": levels, "params": params,
                                                      "check_resolution": check_resolution},
                               n_jobs=n_jobs).retrieve()
    rows = []
    for test in test_pairs:
        mine = [b for b in breakdowns if b.pair == test.name]
        for term in TERMS:
            magnitudes = np.array([b.magnitudes[term] for b in mine])
            if np.all(magnitudes == 0):
                slope = np.nan
            else:
                slope, used = loglog_slope(eps_list, magnitudes)
                if used < MIN_FIT_POINTS:
                    raise DegenerateFitError("term {} of pair {} has only {} usable points".format(
                        term, test.name, used))
            for b in mine:
                b.slopes = dict(b.slopes or {}, **{term: slope})
            predicted = predicted_exponent(term, params.r)
            logger.info("%s/%s: slope %.4f, predicted %.1f", test.name, term, slope, predicted)
            rows.extend({"pair": test.name, "term": term, "eps": b.eps,
                         "magnitude": b.magnitudes[term], "predicted_exponent": predicted,
                         "fitted_slope": slope} for b in mine)
    return pd.DataFrame(rows, columns=["pair"] + SWEEP_COLUMNS)


def limit_residual(trajectory, test, params):
    """Relative residuals of the limit pressure identity and of the weak Reynolds equation.

    ``pressure``: ``|chi delta <h, psi_xxt> + beta <h_xx, psi_xx> - <p, psi>|``;
    ``reynolds``: ``|<h^3 (p_x/12 - Phi), psi_x> - <h, psi_t>|``, both space-time integrals
    over the trajectory window, each divided by its largest contribution.
    """
    levels = trajectory if isinstance(trajectory, Levels) else _levels(trajectory, params)
    window = levels.window
    grid = grid_of(levels.h[0])
    potential = PotentialCache(params.forcing, grid)
    y, _ = gauss_legendre(params.quadrature)
    parts = {"visco": [], "bending": [], "pressure": [], "flux": [], "storage": []}
    for i, t in enumerate(levels.t):
        h = levels.h[i]
        T = test.evaluate(grid.nodes, y, t, window)
        parts["visco"].append(params.delta * mean_integral(h * T.psi_xx_t) if params.chi else 0.0)
        parts["bending"].append(params.beta * mean_integral(deriv_x(h, 2) * T.psi_xx))
        parts["pressure"].append(mean_integral(levels.p[i] * T.psi))
        parts["flux"].append(mean_integral(flux_of(h, levels.p[i], potential(t)) * T.psi_x))
        parts["storage"].append(mean_integral(h * T.psi_t))
    I = {key: float(simpson(np.array(values), x=levels.t)) for key, values in parts.items()}

    def relative(residual, *scales):
        scale = max(abs(s) for s in scales)
        return abs(residual) / scale if scale > 0 else abs(residual)

    return {"pressure": relative(I["visco"] + I["bending"] - I["pressure"],
                                 I["visco"], I["bending"], I["pressure"]),
            "reynolds": relative(I["flux"] - I["storage"], I["flux"], I["storage"])}
