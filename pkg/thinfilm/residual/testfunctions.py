# coding=utf-8
"""Versioned test-function pairs for the weak-form residual harness.

A pair is built from two trigonometric series ``A1(x)`` and ``P(x)`` and a time bump
``tau(t) = sin^2(pi (t - t0) / (t1 - t0))`` vanishing at both ends of the window:

    phi1 = A1(x) y (1 - y) tau(t),    phi2 = P(x) y^2 tau(t),    psi = P(x) tau(t).

At ``y = 1`` this gives ``phi = (0, psi)`` exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace
from typing import Tuple

import numpy as np

TEST_SET_VERSION = "1"


@dataclass(frozen=True)
class TrigSeries:
    """``c + sum_m a_m cos(2 pi m x) + b_m sin(2 pi m x)``, stored as ``(m, a_m, b_m)`` terms."""
    terms: Tuple[Tuple[int, float, float], ...]
    constant: float = 0.0

    def __call__(self, x, order=0):
        x = np.asarray(x, dtype=float)
        value = np.full(x.shape, self.constant if order == 0 else 0.0)
        for m, a, b in self.terms:
            k = 2.0 * np.pi * m
            # d^order/dx^order of cos and sin, as a phase shift by order * pi / 2
            shift = order * np.pi / 2.0
            value = value + k ** order * (a * np.cos(k * x + shift) + b * np.sin(k * x + shift))
        return value


def time_bump(t, t0, t1, order=0):
    """``sin^2(pi s)`` with ``s = (t - t0) / (t1 - t0)`` or its first time derivative."""
    t = np.asarray(t, dtype=float)
    length = t1 - t0
    s = (t - t0) / length
    if order == 0:
        return np.sin(np.pi * s) ** 2
    if order == 1:
        return np.pi / length * np.sin(2.0 * np.pi * s)
    raise ValueError("time_bump supports order 0 or 1")


@dataclass(frozen=True)
class TestFunctionPair:
    """Coupled fluid/structure test functions ``(phi, psi)``."""
    name: str
    A1: TrigSeries
    psi_profile: TrigSeries
    version: str = TEST_SET_VERSION

    __test__ = False

    def evaluate(self, x, y, t, window):
        """Values and derivatives at nodes ``x`` (n,), ``y`` (Q,) and time ``t``.

        Returns a namespace with plane arrays ``phi1, phi1_x, phi1_y, phi1_t, phi2, phi2_x,
        phi2_y`` of shape ``(n, Q)`` and line arrays ``psi, psi_x, psi_xx, psi_t, psi_xx_t`` of
        shape ``(n,)``.
        """
        t0, t1 = window
        tau = float(time_bump(t, t0, t1))
        tau_t = float(time_bump(t, t0, t1, order=1))
        x = np.asarray(x, dtype=float)[:, None]
        y = np.asarray(y, dtype=float)[None, :]
        A, A_x = self.A1(x), self.A1(x, 1)
        S, S_x = self.psi_profile(x), self.psi_profile(x, 1)
        line = self.psi_profile(x[:, 0])
        line_xx = self.psi_profile(x[:, 0], 2)
        return SimpleNamespace(
            phi1=A * y * (1.0 - y) * tau,
            phi1_x=A_x * y * (1.0 - y) * tau,
            phi1_y=A * (1.0 - 2.0 * y) * tau,
            phi1_t=A * y * (1.0 - y) * tau_t,
            phi2=S * y ** 2 * tau,
            phi2_x=S_x * y ** 2 * tau,
            phi2_y=2.0 * S * y * tau,
            psi=line * tau,
            psi_x=self.psi_profile(x[:, 0], 1) * tau,
            psi_xx=line_xx * tau,
            psi_t=line * tau_t,
            psi_xx_t=line_xx * tau_t)

    def trace_defect(self, x, t, window):
        """``max |phi(x, 1, t) - (0, psi(x, t))|``; zero by construction."""
        values = self.evaluate(x, [1.0], t, window)
        return float(max(np.max(np.abs(values.phi1[:, 0])),
                         np.max(np.abs(values.phi2[:, 0] - values.psi))))


BUNDLED_TEST_PAIRS = (
    TestFunctionPair("single_mode",
                     TrigSeries(((1, 1.0, 0.0),)),
                     TrigSeries(((1, 0.0, 0.6),))),
    TestFunctionPair("two_mode",
                     TrigSeries(((1, 1.0, 0.0), (2, 0.0, 0.2))),
                     TrigSeries(((1, 0.0, 0.6), (2, 0.1, 0.0)))),
    TestFunctionPair("offset",
                     TrigSeries(((1, 0.8, 0.0),), constant=0.3),
                     TrigSeries(((1, 0.0, 0.5), (2, 0.0, 0.1)))),
)


def get_test_pair(name):
    for pair in BUNDLED_TEST_PAIRS:
        if pair.name == name:
            return pair
    raise ValueError("unknown test pair {!r} (bundled: {})".format(
        name, ", ".join(p.name for p in BUNDLED_TEST_PAIRS)))
