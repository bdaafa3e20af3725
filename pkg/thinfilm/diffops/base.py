# coding=utf-8
"""Periodic pseudospectral differentiation on the unit interval and vertical quadrature.

Nodal fields are float64 arrays of length ``n`` sampled at ``x_j = j / n``. All functions accept
any array-like (including :class:`GridField`) and return plain arrays.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre

from thinfilm.core.base import PeriodicGrid, build_grid
from thinfilm.utils.validation import check_plane_values, check_values

MAX_ORDER = 6


@dataclass(frozen=True, eq=False)
class GridField:
    """Nodal samples of a 1-periodic function bound to their grid."""
    values: np.ndarray
    grid: PeriodicGrid

    def __post_init__(self):
        values = check_values(self.values, self.grid.n, name="GridField")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid, function):
        return cls(function(grid.nodes), grid)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return self.grid.n


@dataclass(frozen=True, eq=False)
class PlaneField:
    """Samples on x-nodes times vertical nodes of the reference strip, shape ``(n, Q)``."""
    values: np.ndarray
    grid: PeriodicGrid
    y: np.ndarray

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        values = check_plane_values(self.values, shape=(self.grid.n, y.size), name="PlaneField")
        values.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "y", y)

    def scaled(self, factor):
        return PlaneField(factor * self.values, self.grid, self.y)

    def to_frame(self, column="v1"):
        import pandas as pd
        x, y = np.meshgrid(self.grid.nodes, self.y, indexing="ij")
        return pd.DataFrame({"x": x.ravel(), "y": y.ravel(), column: self.values.ravel()})


def _as_values(f, name="f"):
    values = np.asarray(f, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError("{} must be finite".format(name))
    return values


def grid_of(f):
    """Grid matching the number of samples of a nodal field."""
    if isinstance(f, GridField):
        return f.grid
    return build_grid(np.shape(f)[0])


@lru_cache(maxsize=64)
def wavenumbers(n):
    """Angular wavenumbers ``2 pi m`` of the real transform of an ``n``-point field."""
    k = 2.0 * np.pi * np.fft.rfftfreq(n, d=1.0 / n)
    k.setflags(write=False)
    return k


def _check_order(k):
    if isinstance(k, bool) or not isinstance(k, (numbers.Integral, np.integer)) \
            or not 1 <= k <= MAX_ORDER:
        raise ValueError("derivative order must be an integer in 1..{}, got {!r}".format(MAX_ORDER, k))
    return int(k)


def spectral_symbol(n, order):
    """Fourier multiplier ``(i k)^order`` with the Nyquist entry zeroed for odd orders."""
    symbol = (1j * wavenumbers(n)) ** order
    if order % 2:
        symbol[-1] = 0.0
    return symbol


def spectral_derivative(values, order, axis=0):
    n = values.shape[axis]
    if n % 2:
        raise ValueError("spectral differentiation needs an even number of nodes, got {}".format(n))
    shape = [1] * values.ndim
    shape[axis] = n // 2 + 1
    coefficients = np.fft.rfft(values, axis=axis) * spectral_symbol(n, order).reshape(shape)
    return np.fft.irfft(coefficients, n=n, axis=axis)


def deriv_x(f, k):
    """``k``-th derivative of the trigonometric interpolant of ``f``, ``1 <= k <= 6``.

    Parameters
    ----------
    f : array-like of shape (n,) or (n, Q)
        Nodal samples; extra trailing axes (vertical nodes) are differentiated along x too.

    k : int
        Derivative order.

    Returns
    -------
    df : ndarray
        Zero-mean derivative samples.
    """
    k = _check_order(k)
    return spectral_derivative(_as_values(f), k, axis=0)


def mean_integral(f):
    """Periodic trapezoid rule ``dx * sum(f)`` for the integral over the unit interval."""
    values = _as_values(f)
    total = np.sum(values, axis=0) / values.shape[0]
    return float(total) if np.ndim(total) == 0 else total


def flux_divergence(G):
    return deriv_x(G, 1)


def padded_size(n):
    """Grid size of the 3/2 zero-padded product grid, rounded up to an even number."""
    return 2 * int(np.ceil(3 * n / 4))


def pad(values, m):
    """Interpolate an ``n``-point periodic field onto ``m >= n`` points by zero-padding."""
    n = values.shape[0]
    coefficients = np.fft.rfft(values) * (m / n)
    coefficients[-1] *= 0.5
    padded = np.zeros(m // 2 + 1, dtype=complex)
    padded[:coefficients.size] = coefficients
    return np.fft.irfft(padded, n=m)


def truncate(values, n):
    """Project an ``m``-point field onto the modes of an ``n``-point grid, Nyquist dropped."""
    m = values.shape[0]
    coefficients = np.fft.rfft(values)[:n // 2 + 1] * (n / m)
    coefficients[-1] = 0.0
    return np.fft.irfft(coefficients, n=n)


def dealiased_product(*factors):
    """Pointwise product of nodal fields formed on the 3/2-padded grid and truncated back.

    Modes beyond two thirds of the padded band never fold back onto the retained modes of a
    quadratic product.
    """
    arrays = [_as_values(f) for f in factors]
    n = arrays[0].shape[0]
    m = padded_size(n)
    product = np.ones(m)
    for values in arrays:
        product = product * pad(values, m)
    return truncate(product, n)


def cubed_times(h, B):
    """Dealiased ``h**3 * B``."""
    h = _as_values(h, "h")
    return dealiased_product(h, h, h, _as_values(B, "B"))


@lru_cache(maxsize=32)
def gauss_legendre(Q):
    """Gauss-Legendre nodes and weights mapped to [0, 1] (read-only arrays)."""
    if isinstance(Q, bool) or not isinstance(Q, (numbers.Integral, np.integer)) or Q < 2:
        raise ValueError("quadrature order must be an integer >= 2, got {!r}".format(Q))
    s, w = legendre.leggauss(int(Q))
    y = 0.5 * (s + 1.0)
    w = 0.5 * w
    y.setflags(write=False)
    w.setflags(write=False)
    return y, w


def quad_unit_interval(g):
    """Gauss-Legendre approximation of the integral over [0, 1] of samples at the nodes.

    The last axis of ``g`` runs over the ``Q`` nodes of :func:`gauss_legendre`.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim == 0 or g.shape[-1] < 2:
        raise ValueError("quadrature needs samples at Q >= 2 nodes")
    _, weights = gauss_legendre(g.shape[-1])
    return g @ weights


@lru_cache(maxsize=32)
def legendre_diff_matrix(Q):
    """Matrix mapping values at the Q Gauss-Legendre nodes on [0, 1] to the derivative of
    their interpolating polynomial at the same nodes."""
    y, _ = gauss_legendre(Q)
    s = 2.0 * y - 1.0
    V = legendre.legvander(s, Q - 1)
    dcoef = legendre.legder(np.eye(Q), axis=0)
    D = 2.0 * legendre.legvander(s, Q - 2) @ dcoef @ np.linalg.inv(V)
    D.setflags(write=False)
    return D


def deriv_y(values):
    """Vertical derivative of samples on ``(n, Q)`` Gauss-Legendre nodes."""
    values = _as_values(values)
    return values @ legendre_diff_matrix(values.shape[-1]).T
