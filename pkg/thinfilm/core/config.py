# coding=utf-8
"""Reading and writing run configurations.

A configuration is an INI file::

    [grid]
    n = 64

    [params]
    beta = 12
    delta = 0
    r = 1

    [forcing]
    f1 = 0

    [run]
    t_end = 1e-4
    scheme = BDF2

    [init]
    h0 = 1 + 0.3*sin(2*pi*x)

``[init] h0`` is either an expression in ``x`` or the path of a CSV table (resolved relative
to the configuration file) ending in ``.csv``.
"""
from __future__ import annotations

import configparser
import io
import os
import re

from thinfilm.core.base import InitialSpec, RunConfig, build_grid, validate_params
from thinfilm.utils.errors import ConfigError

REQUIRED = {"grid": ("n",),
            "params": ("beta", "delta", "r"),
            "forcing": (),
            "run": ("t_end",),
            "init": ("h0",)}

OPTIONAL = {"grid": (),
            "params": ("rho", "h_floor", "newton_tol", "max_inner_iters"),
            "forcing": ("f1", "bound", "quadrature"),
            "run": ("dt0", "scheme", "output_every"),
            "init": ()}

_SECTION = re.compile(r"^\s*\[([^\]]+)\]")
_KEY = re.compile(r"^\s*([^=:#;\s][^=:]*?)\s*[=:]")


class _Locator:
    """Maps sections and keys of an INI text to their one-based line numbers."""

    def __init__(self, text):
        self.sections = {}
        self.keys = {}
        section = None
        for number, line in enumerate(text.splitlines(), start=1):
            match = _SECTION.match(line)
            if match:
                section = match.group(1).strip()
                self.sections.setdefault(section, number)
                continue
            match = _KEY.match(line)
            if match and section is not None:
                self.keys.setdefault((section, match.group(1).strip().lower()), number)

    def section(self, name):
        return self.sections.get(name)

    def key(self, section, key):
        return self.keys.get((section, key), self.sections.get(section))


def _number(parser, section, key, locator, source, kind=float, default=None):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key)
    try:
        value = float(raw)
        if kind is int:
            if not value.is_integer():
                raise ValueError
            value = int(value)
    except ValueError:
        raise ConfigError("[{}] {} must be {}, got {!r}".format(
            section, key, "an integer" if kind is int else "a number", raw),
            source, locator.key(section, key))
    return value


def parse_config(text, source="<config>", base_dir=None):
    """Build a :class:`RunConfig` from INI text.

    Raises
    ------
    ConfigError
        With the offending line number for syntax errors, missing or unknown keys and values
        rejected by validation.
    """
    from thinfilm.forcing.base import ForcingSpec

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=source)
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise ConfigError("syntax error", source, line)
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], source, getattr(exc, "lineno", None))
    locator = _Locator(text)

    for section, keys in REQUIRED.items():
        if not parser.has_section(section):
            if not keys:
                continue
            raise ConfigError("missing section [{}]".format(section), source)
        for key in keys:
            if not parser.has_option(section, key):
                raise ConfigError("section [{}] is missing required key '{}'".format(section, key),
                                  source, locator.section(section))
    for section in parser.sections():
        if section not in REQUIRED:
            raise ConfigError("unknown section [{}]".format(section), source, locator.section(section))
        allowed = set(REQUIRED[section]) | set(OPTIONAL[section])
        for key in parser.options(section):
            if key not in allowed:
                raise ConfigError("unknown key '{}' in section [{}]".format(key, section),
                                  source, locator.key(section, key))

    try:
        grid = build_grid(_number(parser, "grid", "n", locator, source, kind=int))
    except ValueError as exc:
        raise ConfigError(str(exc), source, locator.key("grid", "n"))

    t_end = _number(parser, "run", "t_end", locator, source)
    f1 = parser.get("forcing", "f1", fallback="0") if parser.has_section("forcing") else "0"
    try:
        forcing = ForcingSpec.from_text(
            f1,
            bound=_number(parser, "forcing", "bound", locator, source) if parser.has_section("forcing") else None,
            quadrature=_number(parser, "forcing", "quadrature", locator, source, kind=int, default=16)
            if parser.has_section("forcing") else 16,
            t_end=t_end)
    except ValueError as exc:
        raise ConfigError(str(exc), source, locator.key("forcing", "f1"))

    raw = {key: _number(parser, "params", key, locator, source,
                        kind=int if key == "max_inner_iters" else float)
           for key in REQUIRED["params"] + OPTIONAL["params"] if parser.has_option("params", key)}
    raw["forcing"] = forcing
    raw["quadrature"] = forcing.quadrature
    try:
        params = validate_params(raw)
    except ValueError as exc:
        key = next((k for k in ("r", "beta", "delta") if k in str(exc)), None)
        raise ConfigError(str(exc), source,
                          locator.key("params", key) if key else locator.section("params"))

    h0 = parser.get("init", "h0").strip()
    if h0.lower().endswith(".csv"):
        if base_dir is not None and not os.path.isabs(h0):
            h0 = os.path.join(base_dir, h0)
        initial = InitialSpec(path=h0)
    else:
        initial = InitialSpec(expression=h0)
    try:
        initial.evaluate(grid)
    except (ValueError, OSError) as exc:
        raise ConfigError(str(exc), source, locator.key("init", "h0"))

    try:
        return RunConfig(grid=grid, params=params, t_end=t_end, initial_profile=initial,
                         dt0=_number(parser, "run", "dt0", locator, source),
                         scheme=parser.get("run", "scheme", fallback="BDF2").strip().upper(),
                         output_every=_number(parser, "run", "output_every", locator, source,
                                              kind=int, default=1))
    except ValueError as exc:
        raise ConfigError(str(exc), source, locator.section("run"))


def load_config(path):
    with open(path) as handle:
        text = handle.read()
    return parse_config(text, source=os.path.basename(path),
                        base_dir=os.path.dirname(os.path.abspath(path)))


def dump_config(config):
    """Render a :class:`RunConfig` back to INI text accepted by :func:`parse_config`."""
    parser = configparser.ConfigParser(interpolation=None)
    params = config.params
    parser["grid"] = {"n": str(config.grid.n)}
    parser["params"] = {"beta": repr(params.beta), "delta": repr(params.delta), "r": repr(params.r),
                        "rho": repr(params.rho), "h_floor": repr(params.h_floor),
                        "newton_tol": repr(params.newton_tol),
                        "max_inner_iters": str(params.max_inner_iters)}
    parser["forcing"] = {"f1": params.forcing.f1.text, "quadrature": str(params.forcing.quadrature)}
    if params.forcing.bound is not None:
        parser["forcing"]["bound"] = repr(params.forcing.bound)
    parser["run"] = {"t_end": repr(config.t_end), "scheme": config.scheme,
                     "output_every": str(config.output_every)}
    if config.dt0 is not None:
        parser["run"]["dt0"] = repr(config.dt0)
    parser["init"] = {"h0": config.initial_profile.describe()}
    buffer = io.StringIO()
    parser.write(buffer)
    return buffer.getvalue()
