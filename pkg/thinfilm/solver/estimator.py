# coding=utf-8
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from sklearn.base import BaseEstimator

from thinfilm.core.base import FilmState, RunConfig, SCHEMES
from thinfilm.diagnostics.base import (BALANCE_COLUMNS, SERIES_COLUMNS, DiagnosticsRecord,
                                       records_frame, record_state)
from thinfilm.forcing.base import PotentialCache
from thinfilm.solver.base import check_positivity, pressure_of, step, thin_film_rate
from thinfilm.utils.errors import InnerSolverDivergence, PositivityViolation, UnrecoverableStep
from thinfilm.utils.validation import check_integer, check_positive, check_values

logger = logging.getLogger(__name__)

DT_SHRINK = 0.5
DT_GROWTH = 1.2
CLEAN_STEPS_BEFORE_GROWTH = 10
DT_UNDERFLOW = 1e-8
SAFETY = 10.0


def default_dt0(grid, params, h0):
    """``0.1 * (12 / (beta max(h0)^3)) * (n/2)^-6 * 10``."""
    return 0.1 * (12.0 / (params.beta * np.max(h0) ** 3)) * (grid.n / 2.0) ** -6 * SAFETY


@dataclass
class Trajectory:
    """Snapshots and per-step diagnostics of one run.

    Attributes
    ----------
    snapshots : list of FilmState
        Stored levels, strictly increasing in time, each with its height rate.

    diagnostics : list of DiagnosticsRecord
        One record per accepted level, the initial one included.

    config : RunConfig or None
        Configuration the run was started from.

    params : ModelParams
    """
    snapshots: List[FilmState]
    diagnostics: List[DiagnosticsRecord]
    params: object
    config: Optional[RunConfig] = None
    estimator_params: dict = field(default_factory=dict)

    @property
    def grid(self):
        return self.snapshots[0].grid

    @property
    def times(self):
        return np.array([s.t for s in self.snapshots])

    @property
    def heights(self):
        return np.vstack([s.h for s in self.snapshots])

    @property
    def rates(self):
        return np.vstack([s.w for s in self.snapshots])

    @property
    def last_good_time(self):
        return self.diagnostics[-1].t if self.diagnostics else None

    def pressures(self):
        return np.vstack([pressure_of(s.h, s.w, self.params) for s in self.snapshots])

    def series_frame(self):
        return records_frame(self.diagnostics)[SERIES_COLUMNS]

    def balance_frame(self):
        return records_frame(self.diagnostics, self.params)[BALANCE_COLUMNS]

    def save(self, path):
        """Persist heights and rates of all snapshots with ``numpy.savez``."""
        from thinfilm.core.config import dump_config
        config = dump_config(self.config) if self.config is not None else ""
        np.savez(path, t=self.times, h=self.heights, w=self.rates, config=np.array(config))


def load_trajectory(path):
    """Read a file written by :meth:`Trajectory.save`.

    Returns
    -------
    t, h, w : ndarray
        Snapshot times, heights and rates.

    config : RunConfig or None
    """
    from thinfilm.core.config import parse_config
    with np.load(path, allow_pickle=False) as data:
        t, h, w = data["t"], data["h"], data["w"]
        text = str(data["config"])
    config = parse_config(text, source=str(path)) if text else None
    return t, h, w, config


class ThinFilmSolver(BaseEstimator):
    """Adaptive time integration of the sixth-order thin-film equation.

    Parameters
    ----------
    params : ModelParams
        Validated model parameters.

    t_end : float
        Final time.

    dt0 : float, optional
        Initial and maximal step; defaults to :func:`default_dt0`.

    scheme : {'BDF2', 'BE'}
        Time discretization.

    output_every : int
        Snapshot cadence in accepted steps; the final level is always stored.

    verbose : bool
        Log progress at INFO level.

    Attributes
    ----------
    trajectory_ : Trajectory
        Result of the last call to :meth:`run`.

    n_steps_ : int
        Accepted steps.

    n_rejected_ : int
        Rejected step attempts.
    """

    def __init__(self, params, t_end=1e-4, dt0=None, scheme="BDF2", output_every=1, verbose=False):
        self.params = params
        self.t_end = t_end
        self.dt0 = dt0
        self.scheme = scheme
        self.output_every = output_every
        self.verbose = verbose

    def _log(self, message, *args):
        logger.log(logging.INFO if self.verbose else logging.DEBUG, message, *args)

    def run(self, grid, h0, config=None):
        """Integrate from ``h0`` at ``t = 0`` to ``t_end``.

        Steps that violate positivity or whose inner iteration diverges are retried with half
        the step; after 10 clean steps the step grows by 1.2, never beyond ``dt0``.

        Raises
        ------
        PositivityViolation
            When the step underflows ``dt0 * 1e-8`` and the last failure was a positivity
            failure.

        UnrecoverableStep
            When the step underflows for any other reason.

        Both carry ``last_good_time`` and the partial ``trajectory``.
        """
        params = self.params
        t_end = check_positive(self.t_end, "t_end")
        if self.scheme not in SCHEMES:
            raise ValueError("scheme must be one of {}, got {!r}".format(SCHEMES, self.scheme))
        output_every = check_integer(self.output_every, "output_every", minimum=1)
        h0 = check_values(h0, grid.n, name="h0")
        check_positivity(h0, grid, 0.0, params.h_floor)
        dt0 = default_dt0(grid, params, h0) if self.dt0 is None else check_positive(self.dt0, "dt0")

        potential = PotentialCache(params.forcing, grid)
        state = FilmState(0.0, h0, grid)
        state = state.with_rate(thin_film_rate(h0, potential(0.0), params))
        previous = None
        trajectory = Trajectory([state], [record_state(state, params, potential(0.0))], params,
                                config=config, estimator_params=self.get_params())
        self.trajectory_ = trajectory
        self.n_steps_ = 0
        self.n_rejected_ = 0

        dt = dt0
        clean = 0
        self._log("run to t = %.6g with dt0 = %.3e (%s, n = %d)", t_end, dt0, self.scheme, grid.n)
        while state.t < t_end:
            remaining = t_end - state.t
            final = remaining <= dt * (1.0 + 1e-6)
            dt_try = remaining if final else dt
            try:
                new = step(state, dt_try, params, self.scheme, previous=previous, potential=potential)
            except (PositivityViolation, InnerSolverDivergence) as exc:
                self.n_rejected_ += 1
                dt *= DT_SHRINK
                clean = 0
                logger.debug("step at t = %.10g rejected (%s); dt -> %.3e", state.t, exc, dt)
                if dt < dt0 * DT_UNDERFLOW:
                    raise self._give_up(exc, trajectory, state, dt)
                continue
            if final:
                new = FilmState(t_end, new.h, grid, new.w)
            previous, state = state, new
            self.n_steps_ += 1
            trajectory.diagnostics.append(record_state(state, params, potential(state.t), dt=dt_try))
            if final or self.n_steps_ % output_every == 0:
                trajectory.snapshots.append(state)
            clean += 1
            if clean >= CLEAN_STEPS_BEFORE_GROWTH and dt < dt0:
                dt = min(dt * DT_GROWTH, dt0)
                clean = 0
            if final:
                break
        self._log("finished at t = %.6g after %d steps (%d rejected)", state.t, self.n_steps_,
                  self.n_rejected_)
        return trajectory

    def _give_up(self, exc, trajectory, state, dt):
        if isinstance(exc, PositivityViolation):
            error = exc
        else:
            dump = {"t": state.t, "dt": dt, "last_error": str(exc),
                    "records": list(trajectory.diagnostics)}
            error = UnrecoverableStep("time step underflow at t = {:.10g} (dt = {:.3e}): {}".format(
                state.t, dt, exc), dump=dump, last_good_time=state.t)
        error.last_good_time = state.t
        error.trajectory = trajectory
        if state is not trajectory.snapshots[-1]:
            trajectory.snapshots.append(state)
        logger.warning("giving up at t = %.10g: %s", state.t, error)
        return error


def run(config, verbose=False):
    """Run the solver described by a :class:`RunConfig`."""
    solver = ThinFilmSolver(config.params, t_end=config.t_end, dt0=config.dt0, scheme=config.scheme,
                            output_every=config.output_every, verbose=verbose)
    return solver.run(config.grid, config.initial_profile.evaluate(config.grid), config=config)
