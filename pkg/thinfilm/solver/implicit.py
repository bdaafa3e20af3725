# coding=utf-8
from __future__ import annotations

import logging

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from thinfilm.diffops.base import cubed_times, spectral_derivative, wavenumbers
from thinfilm.utils.errors import InnerSolverDivergence

logger = logging.getLogger(__name__)

GMRES_RESTART = 50


def rate_operator(h, delta):
    """Linear map ``w -> w + (delta/12) d/dx(h^3 d^3w/dx^3)`` on nodal fields of ``h``'s grid."""
    h = np.asarray(h, dtype=float)
    c4 = delta / 12.0

    def apply(w):
        w = np.ravel(w)
        return w + c4 * spectral_derivative(cubed_times(h, spectral_derivative(w, 3)), 1)

    return apply


def implicit_wdot_solve(h, rhs, params, x0=None, tol=None):
    """Solve ``(I + (delta/12) d/dx(h^3 d^3/dx^3)) w = rhs`` for the height rate ``w``.

    The system is solved with GMRES, preconditioned by the inverse Fourier symbol of the
    frozen-coefficient operator with ``mean(h^3)``. The operator preserves the mean, so the
    zero-mean part of ``rhs`` is solved for and its mean is carried over exactly.

    Parameters
    ----------
    h : array-like of shape (n,)
        Positive film height.

    rhs : array-like of shape (n,)
        Right-hand side, usually ``d/dx(h^3((beta/12) h_xxxxx - Phi))``.

    params : ModelParams
        Supplies ``delta``, ``newton_tol`` (relative residual target) and ``max_inner_iters``.

    x0 : array-like, optional
        Initial guess, typically the rate of the previous solve.

    tol : float, optional
        Overrides ``params.newton_tol``.

    Returns
    -------
    w : ndarray of shape (n,)

    Raises
    ------
    InnerSolverDivergence
        When the true relative residual stays above ``10 * tol`` after one restart.
    """
    h = np.asarray(h, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if np.min(h) <= 0:
        raise ValueError("implicit rate solve needs h > 0")
    if params.delta == 0:
        return rhs.copy()
    tol = params.newton_tol if tol is None else tol
    n = h.shape[0]
    mean = rhs.mean()
    b = rhs - mean
    norm_b = np.linalg.norm(b)
    if norm_b == 0:
        return np.full(n, mean)

    apply = rate_operator(h, params.delta)
    A = LinearOperator((n, n), matvec=apply, dtype=float)
    symbol = 1.0 / (1.0 + params.delta / 12.0 * np.mean(h ** 3) * wavenumbers(n) ** 4)
    M = LinearOperator((n, n), matvec=lambda v: np.fft.irfft(np.fft.rfft(np.ravel(v)) * symbol, n=n),
                       dtype=float)

    guess = None if x0 is None else np.asarray(x0, dtype=float) - np.mean(x0)
    residual = np.inf
    w = guess
    for attempt in range(2):
        w, info = gmres(A, b, x0=w, rtol=tol, atol=0.0, restart=min(n, GMRES_RESTART),
                        maxiter=params.max_inner_iters, M=M)
        w = w - w.mean()
        residual = np.linalg.norm(b - apply(w)) / norm_b
        logger.debug("rate solve attempt %d: info=%d, relative residual %.3e", attempt, info, residual)
        if residual <= tol:
            break
    if residual > 10 * tol:
        raise InnerSolverDivergence("implicit rate solve", params.max_inner_iters, residual)
    return w + mean
