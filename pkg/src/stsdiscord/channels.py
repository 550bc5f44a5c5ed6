"""Local single-mode Gaussian channels acting on mode 2.

Each channel is a parameter family rather than a time evolution; a caller
wanting a damping rate maps ``t -> eta = exp(-gamma t)`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .exceptions import DegenerateTrajectoryError, ParameterError
from .gaussian import Direction, TwoModeCovariance, gaussian_discord


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


@dataclass(frozen=True)
class ThermalNoise:
    """Beam splitter of transmissivity ``eta`` against a thermal mode with ``N`` photons."""

    eta: float
    N: float = 0.0

    def __post_init__(self):
        _check(0.0 <= self.eta <= 1.0, f"eta must lie in [0, 1], got {self.eta!r}")
        _check(math.isfinite(self.N) and self.N >= 0, f"N must be >= 0, got {self.N!r}")


@dataclass(frozen=True)
class Amplifier:
    """Phase-insensitive amplifier with gain ``k``."""

    k: float
    N: float = 0.0

    def __post_init__(self):
        _check(math.isfinite(self.k) and self.k >= 1.0, f"k must be >= 1, got {self.k!r}")
        _check(math.isfinite(self.N) and self.N >= 0, f"N must be >= 0, got {self.N!r}")


@dataclass(frozen=True)
class ClassicalNoise:
    """Random Gaussian displacements adding ``n`` noise photons."""

    n: float

    def __post_init__(self):
        _check(math.isfinite(self.n) and self.n >= 0, f"n must be >= 0, got {self.n!r}")


ChannelSpec = Union[ThermalNoise, Amplifier, ClassicalNoise]

FAMILIES = ("thermal-noise", "amplifier", "classical-noise")


def make_channel(family: str, param: float, N: float = 0.0) -> ChannelSpec:
    """Build a channel from its family name and main parameter (eta, k or n)."""
    if family == "thermal-noise":
        return ThermalNoise(param, N)
    if family == "amplifier":
        return Amplifier(param, N)
    if family == "classical-noise":
        return ClassicalNoise(param)
    raise ParameterError(f"unknown channel family {family!r}; expected one of {FAMILIES}")


def channel_param(ch: ChannelSpec) -> float:
    if isinstance(ch, ThermalNoise):
        return ch.eta
    if isinstance(ch, Amplifier):
        return ch.k
    return ch.n


def identity_param(family: str) -> float:
    return {"thermal-noise": 1.0, "amplifier": 1.0, "classical-noise": 0.0}[family]


def apply_channel(cov: TwoModeCovariance, ch: ChannelSpec) -> TwoModeCovariance:
    if isinstance(ch, ThermalNoise):
        b = ch.eta * cov.b + (1.0 - ch.eta) * (ch.N + 0.5)
        g = math.sqrt(ch.eta)
    elif isinstance(ch, Amplifier):
        b = ch.k * cov.b + (ch.k - 1.0) * (ch.N + 0.5)
        g = math.sqrt(ch.k)
    elif isinstance(ch, ClassicalNoise):
        b = cov.b + ch.n
        g = 1.0
    else:
        raise ParameterError(f"not a channel: {ch!r}")
    return TwoModeCovariance(cov.a, b, g * cov.c1, g * cov.c2)


def transform_charfn(
    chi: Callable[[complex, complex], complex],
    ch: ChannelSpec,
    lambda1,
    lambda2,
):
    """Evaluate the output characteristic function given the input one.

    ``chi`` is any callable ``chi(lambda1, lambda2)`` (numpy-vectorised if
    arrays are passed in).
    """
    lambda2 = np.asarray(lambda2, dtype=complex)
    mod2 = np.abs(lambda2) ** 2
    if isinstance(ch, ThermalNoise):
        return chi(lambda1, math.sqrt(ch.eta) * lambda2) * np.exp(
            -(1.0 - ch.eta) * (ch.N + 0.5) * mod2
        )
    if isinstance(ch, Amplifier):
        return chi(lambda1, math.sqrt(ch.k) * lambda2) * np.exp(
            -(ch.k - 1.0) * (ch.N + 0.5) * mod2
        )
    if isinstance(ch, ClassicalNoise):
        return chi(lambda1, lambda2) * np.exp(-ch.n * mod2)
    raise ParameterError(f"not a channel: {ch!r}")


@dataclass(frozen=True)
class TrajectoryPoint:
    channel_param: float
    b_prime: float
    c_prime: float
    discord: float


def trajectory(
    cov: TwoModeCovariance,
    family: str,
    N: float = 0.0,
    samples: int = 101,
    c_max: float | None = None,
    b_max: float | None = None,
    direction: Direction | str = Direction.MODE2,
) -> list[TrajectoryPoint]:
    """Points of the channel's characteristic curve in the (b', c') plane.

    Thermal noise sweeps c' over [0, c]; the amplifier over [c, c_max]
    (default 3c); classical noise keeps c' = c and sweeps b' over
    [b, b_max] (default b + 10). Points are ordered from the initial state
    outwards.
    """
    if samples < 2:
        raise ParameterError("a trajectory needs at least two samples")
    if not np.isclose(cov.c1, -cov.c2, rtol=1e-12, atol=0.0):
        raise ParameterError("trajectory requires c1 = -c2")
    c = cov.c
    if c == 0.0:
        raise DegenerateTrajectoryError("product-state input: c = 0, trajectory undefined")
    sign = math.copysign(1.0, cov.c1)
    bath = N + 0.5
    if family == "thermal-noise":
        c_prime = np.linspace(c, 0.0, samples)
        b_prime = (cov.b - bath) / c**2 * c_prime**2 + bath
        params = (c_prime / c) ** 2
    elif family == "amplifier":
        top = 3.0 * c if c_max is None else c_max
        if top < c:
            raise ParameterError("c_max must be >= c")
        c_prime = np.linspace(c, top, samples)
        b_prime = (cov.b + bath) / c**2 * c_prime**2 - bath
        params = (c_prime / c) ** 2
    elif family == "classical-noise":
        top = cov.b + 10.0 if b_max is None else b_max
        if top < cov.b:
            raise ParameterError("b_max must be >= b")
        b_prime = np.linspace(cov.b, top, samples)
        c_prime = np.full(samples, c)
        params = b_prime - cov.b
    else:
        raise ParameterError(f"unknown channel family {family!r}")
    points = []
    for k, bp, cp in zip(params, b_prime, c_prime):
        out = TwoModeCovariance(cov.a, float(bp), sign * float(cp), -sign * float(cp))
        points.append(
            TrajectoryPoint(float(k), float(bp), float(cp), gaussian_discord(out, direction))
        )
    return points
