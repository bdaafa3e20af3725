# coding=utf-8
"""Right-hand side and single time steps of the sixth-order thin-film equation

    dh/dt = d/dx( h^3 ( (beta/12) h_xxxxx - chi (delta/12) h_xxxt - Phi ) ).
"""
from __future__ import annotations

import logging

import numpy as np

from thinfilm.core.base import FilmState, SCHEMES
from thinfilm.diffops.base import cubed_times, deriv_x, flux_divergence, wavenumbers
from thinfilm.forcing.base import eval_Phi
from thinfilm.solver.implicit import implicit_wdot_solve
from thinfilm.utils.errors import InnerSolverDivergence, MissingRateError, PositivityViolation

logger = logging.getLogger(__name__)


def pressure_of(h, wdot, params):
    """Limit pressure ``p = beta h_xxxx - chi delta (dh/dt)_xx``.

    Raises
    ------
    MissingRateError
        When ``params.chi`` is set and ``wdot`` is not given.
    """
    p = params.beta * deriv_x(h, 4)
    if params.chi:
        if wdot is None:
            raise MissingRateError("pressure with chi = 1 needs the height rate dh/dt")
        p = p - params.delta * deriv_x(wdot, 2)
    return p


def flux_of(h, p, Phi):
    """Flux ``G = h^3 (p_x / 12 - Phi)`` (dealiased), so that ``dh/dt = dG/dx``."""
    return cubed_times(h, deriv_x(p, 1) / 12.0 - np.asarray(Phi, dtype=float))


def explicit_rate(h, Phi, params):
    """``d/dx(h^3 ((beta/12) h_xxxxx - Phi))``: the full rate for chi = 0 and the implicit
    solve's right-hand side for chi = 1."""
    return flux_divergence(flux_of(h, params.beta * deriv_x(h, 4), Phi))


def thin_film_rate(h, Phi, params, x0=None):
    """Time derivative of ``h`` at fixed ``Phi``.

    For chi = 1 the rate is defined implicitly and obtained from :func:`implicit_wdot_solve`
    with ``x0`` as initial guess.
    """
    rhs = explicit_rate(h, Phi, params)
    if params.chi:
        return implicit_wdot_solve(h, rhs, params, x0=x0)
    return rhs


def expanded_rate(h, w, Phi, params):
    """Rate written out as ``d/dx(h^3 ((beta/12) h5 - chi (delta/12) w3 - Phi))`` without
    forming the pressure."""
    bracket = params.beta / 12.0 * deriv_x(h, 5) - np.asarray(Phi, dtype=float)
    if params.chi:
        bracket = bracket - params.delta / 12.0 * deriv_x(w, 3)
    return deriv_x(cubed_times(h, bracket), 1)


def dispersion_rate(k, hbar, params):
    """Growth rate of a small mode ``exp(i k x)`` about the constant film ``hbar``.

    ``sigma = -(beta/12) hbar^3 k^6 / (1 + chi (delta/12) hbar^3 k^4)``.
    """
    k = np.asarray(k, dtype=float)
    if hbar <= 0:
        raise ValueError("hbar must be > 0")
    h3 = hbar ** 3
    sigma = -params.beta / 12.0 * h3 * k ** 6
    if params.chi:
        sigma = sigma / (1.0 + params.delta / 12.0 * h3 * k ** 4)
    return float(sigma) if sigma.ndim == 0 else sigma


def stabilizer_symbol(h, params):
    """Fourier symbol of the implicit constant-coefficient shell, ``(beta/12) max(h^3) k^6``
    (divided by ``1 + (delta/12) max(h^3) k^4`` when chi = 1)."""
    M = np.max(np.asarray(h) ** 3)
    k = wavenumbers(np.shape(h)[0])
    symbol = params.beta / 12.0 * M * k ** 6
    if params.chi:
        symbol = symbol / (1.0 + params.delta / 12.0 * M * k ** 4)
    return symbol


def bdf_coefficients(dt, previous_dt=None):
    """Coefficients ``(a0, a1, a2, e1, e2)`` of variable-step BDF2

        a0 h^{n+1} - a1 h^n + a2 h^{n-1} = dt (e1 F^n - e2 F^{n-1}) (explicit part)

    with ``omega = dt / previous_dt``; ``previous_dt=None`` gives backward Euler.
    """
    if previous_dt is None:
        return 1.0, 1.0, 0.0, 1.0, 0.0
    omega = dt / previous_dt
    return ((1.0 + 2.0 * omega) / (1.0 + omega), 1.0 + omega, omega ** 2 / (1.0 + omega),
            1.0 + omega, omega)


def check_positivity(h, grid, t, h_floor):
    finite = np.isfinite(h)
    if not np.all(finite):
        node = int(np.argmin(finite))
        raise PositivityViolation(node, float(grid.nodes[node]), t, float("nan"), h_floor)
    node = int(np.argmin(h))
    if h[node] <= h_floor:
        raise PositivityViolation(node, float(grid.nodes[node]), t, float(h[node]), h_floor)


def step(state, dt, params, scheme="BDF2", previous=None, potential=None):
    """Advance ``state`` by one time step ``dt``.

    Parameters
    ----------
    state : FilmState
        Current level; its ``w`` is reused when present.

    dt : float
        Step size, > 0.

    params : ModelParams

    scheme : {'BE', 'BDF2'}
        Time discretization. BDF2 falls back to backward Euler when ``previous`` is None.

    previous : FilmState, optional
        The level before ``state`` (BDF2 only); the step ratio is taken from the times.

    potential : callable, optional
        ``t -> Phi`` on the state's grid; defaults to evaluating ``params.forcing``.

    Returns
    -------
    new_state : FilmState
        Next level, with the rate ``w`` at the new level attached.

    Raises
    ------
    PositivityViolation
        If the new height has a node at or below ``params.h_floor`` (or is non-finite).

    InnerSolverDivergence
        If an inner iteration fails to converge.
    """
    if not dt > 0:
        raise ValueError("dt must be > 0, got {!r}".format(dt))
    if scheme not in SCHEMES:
        raise ValueError("scheme must be one of {}, got {!r}".format(SCHEMES, scheme))
    grid = state.grid
    if potential is None:
        def potential(t):
            return eval_Phi(params.forcing, grid, t)
    if scheme == "BE" or previous is None:
        previous = None
        coefficients = bdf_coefficients(dt)
    else:
        coefficients = bdf_coefficients(dt, state.t - previous.t)
    t_new = state.t + dt
    h = state.h
    S = stabilizer_symbol(h, params)
    with np.errstate(over="ignore", invalid="ignore"):
        if params.chi:
            h_new, w_new = _implicit_step(state, previous, dt, t_new, coefficients, S, params, potential)
        else:
            h_new = _imex_step(state, previous, dt, t_new, coefficients, S, params, potential)
            w_new = None
    check_positivity(h_new, grid, t_new, params.h_floor)
    if w_new is None:
        w_new = explicit_rate(h_new, potential(t_new), params)
    return FilmState(t_new, h_new, grid, w_new)


def _history(state, previous, coefficients):
    a0, a1, a2, _, _ = coefficients
    history = a1 * np.fft.rfft(state.h)
    if previous is not None:
        history = history - a2 * np.fft.rfft(previous.h)
    return history


def _imex_step(state, previous, dt, t_new, coefficients, S, params, potential):
    a0, _, _, e1, e2 = coefficients
    n = state.grid.n
    if previous is None:
        # backward Euler: Phi at the new level
        N = explicit_rate(state.h, potential(t_new), params)
        F_hat = np.fft.rfft(N) + S * np.fft.rfft(state.h)
    else:
        N = state.w if state.w is not None else explicit_rate(state.h, potential(state.t), params)
        N_old = previous.w if previous.w is not None else explicit_rate(previous.h, potential(previous.t), params)
        F_hat = e1 * (np.fft.rfft(N) + S * np.fft.rfft(state.h)) \
            - e2 * (np.fft.rfft(N_old) + S * np.fft.rfft(previous.h))
    h_hat = (_history(state, previous, coefficients) + dt * F_hat) / (a0 + dt * S)
    # the mean is invariant
    h_hat[0] = np.fft.rfft(state.h)[0]
    return np.fft.irfft(h_hat, n=n)


def _implicit_step(state, previous, dt, t_new, coefficients, S, params, potential):
    """Lagged-coefficient fixed point for the fully implicit chi = 1 step."""
    a0 = coefficients[0]
    n = state.grid.n
    Phi = potential(t_new)
    history = _history(state, previous, coefficients)
    mean_hat = np.fft.rfft(state.h)[0]
    w = state.w
    h = state.h + dt * w if w is not None else state.h.copy()
    scale = max(1.0, float(np.max(np.abs(state.h))))
    change = np.inf
    for iteration in range(1, params.max_inner_iters + 1):
        w = thin_film_rate(h, Phi, params, x0=w)
        h_hat = (history + dt * (np.fft.rfft(w) + S * np.fft.rfft(h))) / (a0 + dt * S)
        h_hat[0] = mean_hat
        h_next = np.fft.irfft(h_hat, n=n)
        change = float(np.max(np.abs(h_next - h)))
        h = h_next
        if not np.all(np.isfinite(h)) or np.min(h) <= 0:
            return h, w
        if change <= params.newton_tol * scale:
            logger.debug("implicit step converged in %d iterations", iteration)
            return h, w
    raise InnerSolverDivergence("lagged-coefficient iteration", params.max_inner_iters, change)
