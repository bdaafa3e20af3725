# coding=utf-8
"""Nondimensionalization of physical device parameters.

With scales ``T = L/V`` for time and ``P = mu V / L`` for pressure, the wall enters through

    B = E b^3 / (12 (1 - nu^2)),   beta = B / (mu V L^2),   delta = D / (mu L),
    rho = rho_s b V / mu,          Re = rho_f V L / mu,     eps = H / L.

The reduced model runs on the O(1) groups ``beta_hat = beta eps``, ``delta_hat = delta eps^r``
and ``rho_hat = rho / eps``.
"""
from __future__ import annotations

import configparser
import io
import logging
import math
import warnings
from dataclasses import asdict, dataclass, fields, replace
from typing import NamedTuple

import numpy as np

from thinfilm.utils.errors import ConfigError
from thinfilm.utils.validation import check_positive

logger = logging.getLogger(__name__)

R_RANGE = (1.0, 3.0)

# Factors taking CGS values to SI, per field.
CGS_TO_SI = {"rho_f": 1e3, "rho_s": 1e3, "mu": 0.1, "V": 1e-2, "L": 1e-2, "H": 1e-2,
             "E": 0.1, "b": 1e-2, "nu": 1.0, "D": 1e-3, "mu_s": 0.1}
UNIT_SYSTEMS = ("SI", "CGS")


def _check_nu(nu):
    if isinstance(nu, bool) or not isinstance(nu, (int, float, np.floating)) or not -1.0 < nu < 0.5:
        raise ValueError("nu out of (-1, 0.5): {!r}".format(nu))
    return float(nu)


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional device parameters in SI units.

    Attributes
    ----------
    rho_f, rho_s : float
        Fluid and wall densities (kg/m^3).

    mu : float
        Fluid viscosity (Pa s).

    V : float
        Velocity scale (m/s).

    L, H : float
        Channel length and nominal height (m), with ``0 < H/L < 1``.

    E : float
        Young modulus of the wall (Pa).

    b : float
        Wall thickness (m).

    nu : float
        Poisson ratio in (-1, 0.5).

    D : float
        Wall viscosity coefficient (Pa s m).
    """
    rho_f: float
    rho_s: float
    mu: float
    V: float
    L: float
    H: float
    E: float
    b: float
    nu: float
    D: float

    def __post_init__(self):
        for f in fields(self):
            if f.name == "nu":
                object.__setattr__(self, "nu", _check_nu(self.nu))
            else:
                object.__setattr__(self, f.name, check_positive(getattr(self, f.name), f.name))
        if not self.H < self.L:
            raise ValueError("eps = H/L must lie in (0, 1), got {!r}".format(self.H / self.L))

    @property
    def eps(self):
        return self.H / self.L

    def to_units(self, system):
        """Field values expressed in ``system`` (``'SI'`` or ``'CGS'``)."""
        if system not in UNIT_SYSTEMS:
            raise ValueError("unit system must be one of {}, got {!r}".format(UNIT_SYSTEMS, system))
        values = asdict(self)
        if system == "CGS":
            values = {key: value / CGS_TO_SI[key] for key, value in values.items()}
        return values

    @classmethod
    def from_units(cls, system="SI", **values):
        if system not in UNIT_SYSTEMS:
            raise ValueError("unit system must be one of {}, got {!r}".format(UNIT_SYSTEMS, system))
        if system == "CGS":
            values = {key: value * CGS_TO_SI[key] for key, value in values.items()}
        return cls(**values)


class DimensionlessNumbers(NamedTuple):
    """Dimensionless groups of one device.

    ``rho``, ``delta`` and ``beta`` are the unscaled groups; the ``*_hat`` properties give the
    O(1) coefficients the reduced model runs on.
    """
    Re: float
    rho: float
    delta: float
    beta: float
    eps: float
    r_estimate: float

    @property
    def beta_hat(self):
        return self.beta * self.eps

    @property
    def delta_hat(self):
        return self.delta * self.eps ** self.r_estimate

    @property
    def rho_hat(self):
        return self.rho / self.eps


def bending_stiffness(E, b, nu):
    """Flexural rigidity ``E b^3 / (12 (1 - nu^2))`` of the wall (Pa m^3)."""
    E = check_positive(E, "E")
    b = check_positive(b, "b")
    nu = _check_nu(nu)
    return E * b ** 3 / (12.0 * (1.0 - nu ** 2))


def wall_viscosity(mu_s, b):
    """Wall viscosity coefficient ``D = mu_s b`` of a viscoelastic wall of thickness ``b``."""
    return check_positive(mu_s, "mu_s") * check_positive(b, "b")


def length_scale(B, eps, V, mu):
    """Length ``L = sqrt(B eps / (V mu))`` making ``beta eps = 1``."""
    for value, name in ((B, "B"), (eps, "eps"), (V, "V"), (mu, "mu")):
        check_positive(value, name)
    return math.sqrt(B * eps / (V * mu))


def fit_r(delta, eps):
    """``log(delta) / log(1/eps)``, clamped to [1, 3] with a warning."""
    r = math.log(delta) / math.log(1.0 / eps)
    low, high = R_RANGE
    if not low <= r <= high:
        clamped = min(max(r, low), high)
        warnings.warn("fitted r = {:.4g} is outside [1, 3]; device is out of the thin-film regime, "
                      "using r = {:g}".format(r, clamped), stacklevel=3)
        r = clamped
    return r


def dimensionless_numbers(p):
    """Reynolds number, wall groups, aspect ratio and fitted viscoelastic exponent.

    Parameters
    ----------
    p : PhysicalParams

    Returns
    -------
    numbers : DimensionlessNumbers
    """
    B = bending_stiffness(p.E, p.b, p.nu)
    eps = p.eps
    delta = p.D / (p.mu * p.L)
    numbers = DimensionlessNumbers(Re=p.rho_f * p.V * p.L / p.mu,
                                   rho=p.rho_s * p.b * p.V / p.mu,
                                   delta=delta,
                                   beta=B / (p.mu * p.V * p.L ** 2),
                                   eps=eps,
                                   r_estimate=fit_r(delta, eps))
    logger.debug("dimensionless numbers: %s", numbers)
    return numbers


def inertia_cross_check(p, numbers=None):
    """``(rho_s / rho_f) (b / L) Re``, which must equal the wall inertia group ``rho``."""
    numbers = dimensionless_numbers(p) if numbers is None else numbers
    return p.rho_s / p.rho_f * p.b / p.L * numbers.Re


def groups_table(p):
    """One-row-per-group table (``group``, ``value``) of a device."""
    import pandas as pd
    numbers = dimensionless_numbers(p)
    rows = [("B", bending_stiffness(p.E, p.b, p.nu))]
    rows += [(name, getattr(numbers, name)) for name in numbers._fields]
    rows += [("beta_hat", numbers.beta_hat), ("delta_hat", numbers.delta_hat),
             ("rho_hat", numbers.rho_hat), ("rho_cross_check", inertia_cross_check(p, numbers))]
    return pd.DataFrame(rows, columns=["group", "value"])


def solver_config(numbers, n=64, t_end=1e-4, h0="1 + 0.1*sin(2*pi*x)", f1="0", scheme="BDF2",
                  dt0=None, output_every=1):
    """INI text of a ready-to-run configuration built from the scaled groups.

    The viscoelastic exponent is rounded to the branch the solver distinguishes: ``r = 3`` when
    the estimate rounds to 3, otherwise the estimate itself.
    """
    r = 3.0 if round(numbers.r_estimate, 6) == 3.0 else float(numbers.r_estimate)
    parser = configparser.ConfigParser(interpolation=None)
    parser["grid"] = {"n": str(n)}
    parser["params"] = {"beta": repr(float(numbers.beta_hat)),
                        "delta": repr(float(numbers.delta * numbers.eps ** r)),
                        "r": repr(r),
                        "rho": repr(float(numbers.rho_hat))}
    parser["forcing"] = {"f1": f1}
    parser["run"] = {"t_end": repr(float(t_end)), "scheme": scheme,
                     "output_every": str(output_every)}
    if dt0 is not None:
        parser["run"]["dt0"] = repr(float(dt0))
    parser["init"] = {"h0": h0}
    buffer = io.StringIO()
    parser.write(buffer)
    return buffer.getvalue()


PHYSICAL_KEYS = ("rho_f", "rho_s", "mu", "V", "L", "H", "E", "b", "nu", "D", "mu_s", "eps")


def parse_physical_params(text, source="<physical>"):
    """Read a ``[physical]`` INI section into :class:`PhysicalParams`.

    ``units`` selects ``SI`` (default) or ``CGS``. ``D`` may be replaced by the wall material
    viscosity ``mu_s``; ``L`` may be omitted when ``eps`` is given, in which case it follows
    from :func:`length_scale` and ``H = eps L``.
    """
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], source, getattr(exc, "lineno", None))
    if not parser.has_section("physical"):
        raise ConfigError("missing section [physical]", source)
    section = parser["physical"]
    system = section.get("units", "SI").strip().upper()
    if system not in UNIT_SYSTEMS:
        raise ConfigError("units must be SI or CGS, got {!r}".format(system), source)
    values = {}
    for key in section:
        if key == "units":
            continue
        if key not in PHYSICAL_KEYS:
            raise ConfigError("unknown key '{}' in section [physical]".format(key), source)
        try:
            values[key] = float(section[key])
        except ValueError:
            raise ConfigError("[physical] {} must be a number, got {!r}".format(key, section[key]),
                              source)
    values = {key: value * CGS_TO_SI[key] if system == "CGS" and key in CGS_TO_SI else value
              for key, value in values.items()}
    try:
        if "D" not in values:
            if "mu_s" not in values:
                raise ValueError("give either D or mu_s")
            values["D"] = wall_viscosity(values["mu_s"], values["b"])
        values.pop("mu_s", None)
        eps = values.pop("eps", None)
        if "L" not in values:
            if eps is None:
                raise ValueError("give either L or eps")
            B = bending_stiffness(values["E"], values["b"], values["nu"])
            values["L"] = length_scale(B, eps, values["V"], values["mu"])
        if "H" not in values:
            if eps is None:
                raise ValueError("give either H or eps")
            values["H"] = eps * values["L"]
        return PhysicalParams(**values)
    except (KeyError, TypeError) as exc:
        raise ConfigError("incomplete [physical] section: {}".format(exc), source)
    except ValueError as exc:
        raise ConfigError(str(exc), source)


def load_physical_params(path):
    with open(path) as handle:
        return parse_physical_params(handle.read(), source=str(path))


def consistent_device(p, eps=None):
    """Copy of ``p`` with ``L`` from :func:`length_scale` (and ``H = eps L``), so ``beta eps = 1``."""
    eps = p.eps if eps is None else eps
    L = length_scale(bending_stiffness(p.E, p.b, p.nu), eps, p.V, p.mu)
    return replace(p, L=L, H=eps * L)
