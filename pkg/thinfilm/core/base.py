# coding=utf-8
from __future__ import annotations

import numbers
from dataclasses import dataclass, field, fields, replace
from typing import Optional

import numpy as np

from thinfilm.utils.validation import check_integer, check_positive, check_values

MIN_NODES = 8
SCHEMES = ("BE", "BDF2")


def _frozen(values):
    values = np.array(values, dtype=np.float64, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform periodic grid on the unit interval.

    Attributes
    ----------
    n : int
        Number of nodes.

    dx : float
        Node spacing, ``1 / n``.

    nodes : ndarray of shape (n,)
        ``x_j = j / n`` for ``j = 0..n-1``; read-only.
    """
    n: int
    dx: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, (numbers.Integral, np.integer)):
            raise ValueError("grid size must be an integer, got {!r}".format(n))
        n = int(n)
        if n < MIN_NODES:
            raise ValueError("grid too small: n = {} < {}".format(n, MIN_NODES))
        if n % 2:
            raise ValueError("grid size must be even, got n = {}".format(n))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dx", 1.0 / n)
        object.__setattr__(self, "nodes", _frozen(np.arange(n) / n))


def build_grid(n):
    """Validated periodic grid with ``n`` nodes (even, at least ``MIN_NODES``)."""
    return PeriodicGrid(n)


@dataclass(frozen=True, eq=False)
class FilmState:
    """Film height at one time level.

    ``w`` holds the time derivative of ``h`` at the same level when the producer knows it
    (the solver always stores it); it is ``None`` for bare initial data.
    """
    t: float
    h: np.ndarray
    grid: PeriodicGrid
    w: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "h", _frozen(check_values(self.h, self.grid.n, name="h")))
        if self.w is not None:
            object.__setattr__(self, "w", _frozen(check_values(self.w, self.grid.n, name="w")))

    @property
    def min_h(self):
        return float(np.min(self.h))

    def with_rate(self, w):
        return replace(self, w=w)


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless groups and solver tolerances of the reduced model.

    Build instances with :func:`validate_params`; ``chi`` is derived from ``r`` there.

    Attributes
    ----------
    beta : float
        Structure bending group, > 0.

    delta : float
        Structure viscoelasticity group, >= 0.

    r : float
        Viscoelastic scaling exponent in [1, 3].

    chi : bool
        True exactly when ``r == 3``.

    forcing : ForcingSpec
        Horizontal body force on the reference strip.

    h_floor : float
        Positivity abort threshold.

    newton_tol : float
        Tolerance of the inner iterations.

    max_inner_iters : int
        Iteration cap of the inner iterations.

    rho : float
        Structure inertia group, only used by the weak-form residual harness.

    quadrature : int
        Gauss-Legendre order used for vertical integrals.
    """
    beta: float
    delta: float
    r: float
    chi: bool
    forcing: object
    h_floor: float = 1e-8
    newton_tol: float = 1e-10
    max_inner_iters: int = 200
    rho: float = 1.0
    quadrature: int = 16

    def to_dict(self):
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "forcing"}
        out["forcing"] = self.forcing.to_dict()
        return out


def validate_params(raw=None, **kwargs):
    """Validate raw model parameters and derive ``chi``.

    Parameters
    ----------
    raw : ModelParams or mapping, optional
        Parameter values; keyword arguments override entries of ``raw``.

    Returns
    -------
    params : ModelParams
        Normalized parameters. Validating a :class:`ModelParams` returns an equal value.
    """
    from thinfilm.forcing.base import ForcingSpec

    values = {}
    if isinstance(raw, ModelParams):
        values = {f.name: getattr(raw, f.name) for f in fields(raw)}
    elif raw is not None:
        values = dict(raw)
    values.update(kwargs)

    for key in ("beta", "delta", "r"):
        if key not in values:
            raise ValueError("missing required parameter '{}'".format(key))
    beta = check_positive(values["beta"], "beta")
    delta = check_positive(values["delta"], "delta", strict=False)
    r = check_positive(values["r"], "r")
    if not 1.0 <= r <= 3.0:
        raise ValueError("r out of [1,3]: {}".format(r))
    chi = r == 3.0
    if "chi" in values and values["chi"] is not None and bool(values["chi"]) != chi:
        raise ValueError("chi cannot be set independently of r (r = {} gives chi = {})".format(r, chi))
    if chi and delta == 0:
        raise ValueError("chi requires delta > 0")

    forcing = values.get("forcing")
    if forcing is None:
        forcing = ForcingSpec.zero()
    elif not isinstance(forcing, ForcingSpec):
        forcing = ForcingSpec.from_text(str(forcing))

    return ModelParams(beta=beta, delta=delta, r=r, chi=chi, forcing=forcing,
                       h_floor=check_positive(values.get("h_floor", 1e-8), "h_floor"),
                       newton_tol=check_positive(values.get("newton_tol", 1e-10), "newton_tol"),
                       max_inner_iters=check_integer(values.get("max_inner_iters", 200),
                                                     "max_inner_iters", minimum=1),
                       rho=check_positive(values.get("rho", 1.0), "rho", strict=False),
                       quadrature=check_integer(values.get("quadrature", 16), "quadrature", minimum=2))


@dataclass(frozen=True)
class InitialSpec:
    """Initial film height, either a closed-form expression in ``x`` or a nodal table.

    Tables are read from CSV with an ``h`` column and an optional ``x`` column, which must
    match the grid nodes.
    """
    expression: Optional[str] = None
    path: Optional[str] = None

    def __post_init__(self):
        if (self.expression is None) == (self.path is None):
            raise ValueError("initial profile needs exactly one of expression or path")

    def evaluate(self, grid):
        if self.expression is not None:
            from thinfilm.core.expression import parse_expression
            values = parse_expression(self.expression, variables=("x",))(grid.nodes)
        else:
            import pandas as pd
            table = pd.read_csv(self.path)
            if "h" not in table.columns:
                raise ValueError("{}: initial table needs an 'h' column".format(self.path))
            if len(table) != grid.n:
                raise ValueError("{}: initial table has {} rows, grid has {} nodes".format(
                    self.path, len(table), grid.n))
            if "x" in table.columns and not np.allclose(table["x"].to_numpy(), grid.nodes,
                                                          rtol=0.0, atol=1e-12):
                raise ValueError("{}: x column does not match the grid nodes".format(self.path))
            values = table["h"].to_numpy(dtype=float)
        values = check_values(values, grid.n, name="h0")
        if np.any(values <= 0):
            raise ValueError("initial profile must be strictly positive (min h0 = {:.6g})".format(
                values.min()))
        return values

    def describe(self):
        return self.expression if self.expression is not None else self.path


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one solver run."""
    grid: PeriodicGrid
    params: ModelParams
    t_end: float
    initial_profile: InitialSpec
    dt0: Optional[float] = None
    scheme: str = "BDF2"
    output_every: int = 1

    def __post_init__(self):
        check_positive(self.t_end, "t_end")
        if self.dt0 is not None:
            check_positive(self.dt0, "dt0")
        if self.scheme not in SCHEMES:
            raise ValueError("scheme must be one of {}, got {!r}".format(SCHEMES, self.scheme))
        check_integer(self.output_every, "output_every", minimum=1)
        self.initial_profile.evaluate(self.grid)

    def to_dict(self):
        return {"grid": {"n": self.grid.n},
                "params": self.params.to_dict(),
                "run": {"t_end": self.t_end, "dt0": self.dt0, "scheme": self.scheme,
                        "output_every": self.output_every},
                "init": {"h0": self.initial_profile.describe()}}
