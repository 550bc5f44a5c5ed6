"""Covariance-matrix algebra for two-mode Gaussian states in standard form.

Convention: hbar = 1 and the vacuum covariance of a single mode is ``0.5 * I``.
Every variance handled by this package therefore sits at or above 1/2, and
the entropy function ``entropy_h`` is defined on ``[1/2, inf)``. All
entropies are in nats.

A standard-form covariance is the 4x4 matrix

    [[a, 0, c1, 0 ],
     [0, a, 0,  c2],
     [c1, 0, b, 0 ],
     [0, c2, 0, b ]]

in the quadrature ordering (mode 1, mode 1, mode 2, mode 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import UnphysicalCovarianceError

#: Absolute tolerance on eigenvalue bounds and on the sign of the discord.
PHYS_TOL = 1e-9

# below this distance from 1/2 the (x - 1/2) ln(x - 1/2) term is dropped
_H_BOUNDARY = 1e-12


class Direction(str, Enum):
    """Which mode is measured when extracting classical correlations."""

    MODE2 = "mode2"  # the left-arrow discord, measurement on the channel mode
    MODE1 = "mode1"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class TwoModeCovariance:
    a: float
    b: float
    c1: float
    c2: float

    def matrix(self) -> np.ndarray:
        a, b, c1, c2 = self.a, self.b, self.c1, self.c2
        return np.array(
            [
                [a, 0.0, c1, 0.0],
                [0.0, a, 0.0, c2],
                [c1, 0.0, b, 0.0],
                [0.0, c2, 0.0, b],
            ]
        )

    def swapped(self) -> "TwoModeCovariance":
        """Relabel the modes (1 <-> 2)."""
        return TwoModeCovariance(self.b, self.a, self.c1, self.c2)

    @property
    def c(self) -> float:
        """Magnitude of the cross-correlation, ``|c1|``."""
        return abs(self.c1)


@dataclass(frozen=True)
class SymplecticData:
    I1: float
    I2: float
    I3: float
    I4: float
    delta: float
    d_minus: float
    d_plus: float


@dataclass(frozen=True)
class EntropyReport:
    s1: float
    s2: float
    s12: float
    mutual_information: float
    discord_left: float
    discord_right: float


@dataclass(frozen=True)
class PhysicalityReport:
    ok: bool
    d_minus: float
    message: str

    def __bool__(self) -> bool:
        return self.ok


def entropy_h(x: float, tol: float = PHYS_TOL) -> float:
    """Von Neumann entropy of a single-mode Gaussian state with symplectic eigenvalue ``x``.

    h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), continuous at
    x = 1/2 where it vanishes.
    """
    x = float(x)
    if not x >= 0.5 - tol:  # also catches NaN
        raise UnphysicalCovarianceError(
            f"symplectic eigenvalue {x!r} is below the vacuum bound 1/2"
        )
    excess = x - 0.5
    if excess < _H_BOUNDARY:
        # (x + 1/2) ln(x + 1/2) -> 0 as well; keep the first-order term
        upper = max(x + 0.5, 1.0)
        return upper * math.log(upper)
    return (x + 0.5) * math.log(x + 0.5) - excess * math.log(excess)


def symplectic_data(cov: TwoModeCovariance, tol: float = PHYS_TOL) -> SymplecticData:
    """Invariants I1..I4 and the two symplectic eigenvalues of ``cov``."""
    a, b, c1, c2 = cov.a, cov.b, cov.c1, cov.c2
    I1 = a * a
    I2 = b * b
    I3 = c1 * c2
    I4 = (a * b - c1 * c1) * (a * b - c2 * c2)
    delta = I1 + I2 + 2.0 * I3
    # delta^2 - 4 I4 expanded so that no O(delta^2) terms cancel
    if c1 == -c2:
        c = abs(c1)
        disc = (a - b) ** 2 * (a + b - 2.0 * c) * (a + b + 2.0 * c)
    else:
        disc = ((a - b) * (a + b)) ** 2 + 4.0 * (a * c1 + b * c2) * (a * c2 + b * c1)
    scale = max(delta * delta, 1.0)
    if disc < -tol * scale:
        raise UnphysicalCovarianceError(
            f"negative discriminant {disc!r}: covariance is numerically inconsistent"
        )
    root = math.sqrt(max(disc, 0.0))
    d_plus_sq = 0.5 * (delta + root)
    # d-^2 = I4 / d+^2, free of the delta - root cancellation
    d_minus_sq = 2.0 * I4 / (delta + root) if delta + root > 0 else 0.0
    d_plus = math.sqrt(d_plus_sq)
    d_minus = min(math.sqrt(max(d_minus_sq, 0.0)), d_plus)
    return SymplecticData(I1, I2, I3, I4, delta, d_minus, d_plus)


def physicality_check(cov: TwoModeCovariance, tol: float = PHYS_TOL) -> PhysicalityReport:
    """Check the uncertainty relation; never raises."""
    if not (cov.a >= 0.5 - tol and cov.b >= 0.5 - tol):
        return PhysicalityReport(
            False, float("nan"), f"local variance below 1/2 (a={cov.a!r}, b={cov.b!r})"
        )
    try:
        sd = symplectic_data(cov, tol)
    except UnphysicalCovarianceError as err:
        return PhysicalityReport(False, float("nan"), str(err))
    if cov.a * cov.b - cov.c1 * cov.c1 < 0 or cov.a * cov.b - cov.c2 * cov.c2 < 0:
        return PhysicalityReport(False, sd.d_minus, "covariance matrix is not positive")
    if sd.d_minus < 0.5 - tol:
        return PhysicalityReport(
            False, sd.d_minus, f"smallest symplectic eigenvalue {sd.d_minus!r} < 1/2"
        )
    return PhysicalityReport(True, sd.d_minus, "ok")


def _require_physical(cov: TwoModeCovariance, tol: float) -> SymplecticData:
    report = physicality_check(cov, tol)
    if not report:
        raise UnphysicalCovarianceError(report.message)
    return symplectic_data(cov, tol)


def gaussian_discord(
    cov: TwoModeCovariance,
    direction: Direction | str = Direction.MODE2,
    tol: float = PHYS_TOL,
) -> float:
    """Gaussian discord of a standard-form state.

    ``Direction.MODE2`` measures mode 2 (the mode the channels act on);
    ``Direction.MODE1`` is obtained by exchanging I1 and I2. Values within
    ``tol`` below zero are clamped to zero.
    """
    direction = Direction.parse(direction)
    sd = _require_physical(cov, tol)
    I1, I2 = (sd.I1, sd.I2) if direction is Direction.MODE2 else (sd.I2, sd.I1)
    s1, s2 = math.sqrt(I1), math.sqrt(I2)
    conditional = (s1 + 2.0 * s1 * s2 + 2.0 * sd.I3) / (1.0 + 2.0 * s2)
    value = (
        entropy_h(s2, tol)
        - entropy_h(sd.d_minus, tol)
        - entropy_h(sd.d_plus, tol)
        + entropy_h(conditional, tol)
    )
    if value < 0.0:
        if value < -tol:
            raise UnphysicalCovarianceError(f"negative discord {value!r}")
        value = 0.0
    return value


def mutual_information(cov: TwoModeCovariance, tol: float = PHYS_TOL) -> float:
    sd = _require_physical(cov, tol)
    value = (
        entropy_h(cov.a, tol)
        + entropy_h(cov.b, tol)
        - entropy_h(sd.d_minus, tol)
        - entropy_h(sd.d_plus, tol)
    )
    if -tol <= value < 0.0:
        value = 0.0
    return value


def entropy_report(cov: TwoModeCovariance, tol: float = PHYS_TOL) -> EntropyReport:
    sd = _require_physical(cov, tol)
    s1 = entropy_h(cov.a, tol)
    s2 = entropy_h(cov.b, tol)
    s12 = entropy_h(sd.d_minus, tol) + entropy_h(sd.d_plus, tol)
    return EntropyReport(
        s1=s1,
        s2=s2,
        s12=s12,
        mutual_information=s1 + s2 - s12,
        discord_left=gaussian_discord(cov, Direction.MODE2, tol),
        discord_right=gaussian_discord(cov, Direction.MODE1, tol),
    )
