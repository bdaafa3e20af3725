# coding=utf-8
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from thinfilm.core.expression import parse_expression
from thinfilm.diffops.base import gauss_legendre, quad_unit_interval
from thinfilm.utils.validation import check_integer

SPOT_CHECK = (17, 9, 5)


@dataclass(frozen=True)
class ForcingSpec:
    """Horizontal body force density ``f1(x, y, t)`` on the reference strip.

    Attributes
    ----------
    f1 : Expression
        Closed-form force density in ``(x, y, t)``; assumed continuous in ``y``.

    bound : float or None
        Declared sup-norm bound, checked on a sample lattice when given.

    quadrature : int
        Gauss-Legendre order for the vertical integrals.
    """
    f1: object
    bound: Optional[float] = None
    quadrature: int = 16

    @classmethod
    def from_text(cls, text, bound=None, quadrature=16, t_end=1.0):
        spec = cls(parse_expression(text, variables=("x", "y", "t")),
                   None if bound is None else float(bound),
                   check_integer(quadrature, "quadrature", minimum=2))
        spec.spot_check(t_end if t_end is not None else 1.0)
        return spec

    @classmethod
    def zero(cls, quadrature=16):
        return cls.from_text("0", quadrature=quadrature)

    @property
    def is_zero(self):
        return self.f1.is_zero

    @property
    def time_dependent(self):
        return self.f1.depends_on("t")

    def spot_check(self, t_end):
        """Evaluate ``f1`` on a coarse lattice of the strip times ``[0, t_end]``."""
        nx, ny, nt = SPOT_CHECK
        x, y, t = np.meshgrid(np.linspace(0.0, 1.0, nx), np.linspace(0.0, 1.0, ny),
                              np.linspace(0.0, t_end, nt), indexing="ij")
        with np.errstate(all="ignore"):
            values = self.f1(x, y, t)
        if not np.all(np.isfinite(values)):
            raise ValueError("forcing f1 = {} is not finite on the strip".format(self.f1.text))
        if self.bound is not None and np.max(np.abs(values)) > self.bound:
            raise ValueError("forcing f1 = {} exceeds its declared bound {} (max |f1| = {:.6g})".format(
                self.f1.text, self.bound, np.max(np.abs(values))))

    def to_dict(self):
        return {"f1": self.f1.text, "bound": self.bound, "quadrature": self.quadrature}


def eval_F(spec, x, y, t):
    """Vertical profile ``F(x, y, t) = (y-1) int_0^1 z f1 dz - int_y^1 (y-z) f1 dz``.

    Both integrals use the Gauss-Legendre rule of ``spec``; the second is remapped to [0, 1]
    with ``z = y + (1-y) s``. ``x`` and ``y`` broadcast against each other.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(y < 0.0) or np.any(y > 1.0):
        raise ValueError("y must lie in [0, 1]")
    if spec.is_zero:
        return np.zeros(x.shape)
    s, _ = gauss_legendre(spec.quadrature)
    xs = x[..., None]
    ys = y[..., None]
    first = quad_unit_interval(s * spec.f1(xs, s, t))
    remapped = quad_unit_interval(s * spec.f1(xs, ys + (1.0 - ys) * s, t))
    return (y - 1.0) * first + (1.0 - y) ** 2 * remapped


def eval_Phi(spec, grid, t):
    """Depth integral of ``F`` at the grid nodes."""
    y, _ = gauss_legendre(spec.quadrature)
    if spec.is_zero:
        return np.zeros(grid.n)
    return quad_unit_interval(eval_F(spec, grid.nodes[:, None], y[None, :], t))


class PotentialCache:
    """Evaluates ``Phi`` on one grid, reusing the field when ``f1`` does not depend on time."""

    def __init__(self, spec, grid):
        self.spec = spec
        self.grid = grid
        self._static = None
        self._last = (None, None)

    def __call__(self, t):
        if not self.spec.time_dependent:
            if self._static is None:
                self._static = eval_Phi(self.spec, self.grid, 0.0)
            return self._static
        if self._last[0] != t:
            self._last = (t, eval_Phi(self.spec, self.grid, t))
        return self._last[1]
