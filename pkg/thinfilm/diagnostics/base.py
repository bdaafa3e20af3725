# coding=utf-8
from __future__ import annotations

from dataclasses import asdict, dataclass, fields

import numpy as np
import pandas as pd

from thinfilm.core.base import FilmState
from thinfilm.diffops.base import deriv_x, grid_of, mean_integral
from thinfilm.forcing.base import PotentialCache
from thinfilm.utils.errors import MissingRateError

SERIES_COLUMNS = ["t", "dt", "mass", "min_h", "lyapunov", "energy", "dissipation"]
BALANCE_COLUMNS = ["t", "forcing_power", "visco_dissipation", "fluid_dissipation", "fluid_power",
                   "entropy_residual", "energy_residual"]


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Structural monitors of one accepted level.

    Attributes
    ----------
    t, dt : float
        Time of the level and the step that produced it (NaN for the initial level).

    mass : float
        ``int h dx``.

    min_h : float
        Smallest nodal height.

    lyapunov : float
        ``int 6/h dx + chi (delta/2) int h_xx^2 dx``.

    energy : float
        ``(beta/2) int h_xx^2 dx``.

    dissipation : float
        ``beta int h_xxx^2 dx``.

    forcing_power : float
        ``12 int Phi h_x dx``.

    visco_dissipation : float
        ``chi delta int (h_xt)^2 dx``; NaN when the rate is unknown and chi = 1.

    fluid_dissipation : float
        ``(1/12) int h^3 p_x^2 dx``.

    fluid_power : float
        ``int h^3 Phi p_x dx``.
    """
    t: float
    dt: float
    mass: float
    min_h: float
    lyapunov: float
    energy: float
    dissipation: float
    forcing_power: float
    visco_dissipation: float
    fluid_dissipation: float
    fluid_power: float


def mass(h):
    return mean_integral(h)


def min_height(h):
    return float(np.min(np.asarray(h, dtype=float)))


def lyapunov(h, params):
    h = np.asarray(h, dtype=float)
    if np.min(h) <= 0:
        raise ValueError("lyapunov functional needs h > 0")
    value = mean_integral(6.0 / h)
    if params.chi:
        value += params.delta / 2.0 * mean_integral(deriv_x(h, 2) ** 2)
    return value


def energy(h, params):
    return params.beta / 2.0 * mean_integral(deriv_x(h, 2) ** 2)


def dissipation(h, params):
    return params.beta * mean_integral(deriv_x(h, 3) ** 2)


def forcing_power(h, Phi):
    return 12.0 * mean_integral(np.asarray(Phi, dtype=float) * deriv_x(h, 1))


def record_state(state, params, Phi, dt=float("nan")):
    """Compute the :class:`DiagnosticsRecord` of a :class:`FilmState`."""
    from thinfilm.solver.base import pressure_of

    h = state.h
    Phi = np.asarray(Phi, dtype=float)
    if params.chi and state.w is None:
        visco = fluid = power = float("nan")
    else:
        visco = params.delta * mean_integral(deriv_x(state.w, 1) ** 2) if params.chi else 0.0
        p_x = deriv_x(pressure_of(h, state.w, params), 1)
        h3 = h ** 3
        fluid = mean_integral(h3 * p_x ** 2) / 12.0
        power = mean_integral(h3 * Phi * p_x)
    return DiagnosticsRecord(t=state.t, dt=float(dt), mass=mass(h), min_h=min_height(h),
                             lyapunov=lyapunov(h, params), energy=energy(h, params),
                             dissipation=dissipation(h, params),
                             forcing_power=forcing_power(h, Phi), visco_dissipation=visco,
                             fluid_dissipation=fluid, fluid_power=power)


def _central_window(records):
    if len(records) < 3:
        raise ValueError("balance residuals need at least 3 consecutive records")
    m = len(records) // 2
    before, here, after = records[m - 1], records[m], records[m + 1]
    step = after.t - here.t
    if not np.isclose(here.t - before.t, step, rtol=1e-9, atol=0.0):
        raise ValueError("balance residuals need a uniform time step around t = {:.10g}".format(here.t))
    return before, here, after, step


def entropy_balance_residual(records):
    """``|dL/dt + dissipation - forcing_power|`` at the middle record of a window.

    ``dL/dt`` is the central difference of the Lyapunov functional; the window must have a
    uniform step around its middle record.
    """
    before, here, after, step = _central_window(records)
    rate = (after.lyapunov - before.lyapunov) / (2.0 * step)
    return abs(rate + here.dissipation - here.forcing_power)


def energy_balance_residual(records, params):
    """``|dE/dt + visco_dissipation + fluid_dissipation - fluid_power|`` at the middle record.

    Raises
    ------
    MissingRateError
        If chi = 1 and the records were built without the height rate.
    """
    before, here, after, step = _central_window(records)
    if params.chi and np.isnan(here.visco_dissipation):
        raise MissingRateError("energy balance with chi = 1 needs the stored height rate")
    rate = (after.energy - before.energy) / (2.0 * step)
    return abs(rate + here.visco_dissipation + here.fluid_dissipation - here.fluid_power)


def balance_series(records, params):
    """Entropy and energy residuals at every interior record with a uniform local step (NaN
    elsewhere)."""
    entropy = np.full(len(records), np.nan)
    energy_ = np.full(len(records), np.nan)
    for i in range(1, len(records) - 1):
        window = records[i - 1:i + 2]
        try:
            entropy[i] = entropy_balance_residual(window)
        except ValueError:
            continue
        try:
            energy_[i] = energy_balance_residual(window, params)
        except MissingRateError:
            pass
    return entropy, energy_


def records_frame(records, params=None):
    """DataFrame of records; balance residual columns are added when ``params`` is given."""
    frame = pd.DataFrame([asdict(r) for r in records],
                         columns=[f.name for f in fields(DiagnosticsRecord)])
    if params is not None:
        frame["entropy_residual"], frame["energy_residual"] = balance_series(records, params)
    return frame


def diagnose_trajectory(t, h, w, params):
    """Recompute all functionals and both balance residuals from stored levels.

    Parameters
    ----------
    t : array-like of shape (m,)
        Level times.

    h, w : array-like of shape (m, n)
        Heights and height rates (``w`` may be None when chi = 0).

    Returns
    -------
    frame : pandas.DataFrame
        One row per level with the record fields plus ``entropy_residual`` and
        ``energy_residual``.
    """
    t = np.asarray(t, dtype=float)
    h = np.asarray(h, dtype=float)
    grid = grid_of(h[0])
    potential = PotentialCache(params.forcing, grid)
    records = []
    for i, ti in enumerate(t):
        state = FilmState(ti, h[i], grid, None if w is None else w[i])
        dt = ti - t[i - 1] if i > 0 else float("nan")
        records.append(record_state(state, params, potential(ti), dt=dt))
    return records_frame(records, params)
