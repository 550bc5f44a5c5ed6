"""Channel sweeps, initial slope, temperature threshold and discord maxima."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .channels import FAMILIES, apply_channel, make_channel
from .exceptions import NoRootError, ParameterError
from .gaussian import (
    Direction,
    TwoModeCovariance,
    gaussian_discord,
    mutual_information,
    symplectic_data,
)
from .optimize import bisect, expand_bracket, golden_section_max
from .states import StsParams, sts_covariance

DEFAULT_POINTS = 201
SLOPE_STEP = 1e-5
SLOPE_AGREEMENT = 1e-6


def default_grid(family: str, points: int = DEFAULT_POINTS, stop: float | None = None):
    """Uniform grid starting at the channel's identity point."""
    if family == "thermal-noise":
        return tuple(np.linspace(1.0, 0.0 if stop is None else stop, points))
    if family == "amplifier":
        return tuple(np.linspace(1.0, 5.0 if stop is None else stop, points))
    if family == "classical-noise":
        return tuple(np.linspace(0.0, 5.0 if stop is None else stop, points))
    raise ParameterError(f"unknown channel family {family!r}")


@dataclass(frozen=True)
class SweepConfig:
    state: StsParams
    family: str = "thermal-noise"
    grid: tuple = field(default_factory=lambda: default_grid("thermal-noise"))
    N: float = 0.0
    direction: Direction = Direction.MODE2

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown channel family {self.family!r}")
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        object.__setattr__(self, "direction", Direction.parse(self.direction))
        if len(self.grid) < 1:
            raise ParameterError("empty grid")
        steps = np.diff(self.grid)
        if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ParameterError("grid must be strictly monotone")
        for g in self.grid:
            make_channel(self.family, g, self.N)  # range check


@dataclass(frozen=True)
class SweepRecord:
    param: float
    b_prime: float
    c_prime: float
    discord: float
    mutual_information: float
    d_minus: float
    d_plus: float


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    records: tuple

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(rec, name) for rec in self.records])


def channel_output(state: StsParams, family: str, param: float, N: float = 0.0) -> TwoModeCovariance:
    return apply_channel(sts_covariance(state), make_channel(family, param, N))


def discord_at(state, family, param, N=0.0, direction=Direction.MODE2) -> float:
    return gaussian_discord(channel_output(state, family, param, N), direction)


def sweep_discord(cfg: SweepConfig) -> SweepResult:
    cov0 = sts_covariance(cfg.state)
    records = []
    for g in cfg.grid:
        try:
            cov = apply_channel(cov0, make_channel(cfg.family, g, cfg.N))
            sd = symplectic_data(cov)
            rec = SweepRecord(
                param=g,
                b_prime=cov.b,
                c_prime=cov.c,
                discord=gaussian_discord(cov, cfg.direction),
                mutual_information=mutual_information(cov),
                d_minus=sd.d_minus,
                d_plus=sd.d_plus,
            )
        except ValueError as err:
            raise type(err)(f"at {cfg.family} parameter {g!r}: {err}") from err
        records.append(rec)
    return SweepResult(cfg, tuple(records))


def _backward_slope(f, x, h):
    return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)


def _forward_slope(f, x, h):
    return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)


def initial_slope(
    state: StsParams,
    N: float = 0.0,
    direction: Direction | str = Direction.MODE2,
    eta: float = 1.0,
    step: float = SLOPE_STEP,
) -> float:
    """dD/d(eta) of the thermal-noise channel, evaluated at ``eta`` (default 1).

    A second-order one-sided difference is used, backward from eta = 1. The
    estimate is repeated with half the step and a RuntimeWarning is issued if
    the implied error exceeds 1e-6 (relative once |p| > 1); the returned value is their Richardson
    combination. Negative values mean that the discord initially rises as eta
    decreases from 1.
    """
    if N < 0:
        raise ParameterError("N must be >= 0")
    if not 0.0 <= eta <= 1.0:
        raise ParameterError("eta must lie in [0, 1]")
    direction = Direction.parse(direction)
    cov0 = sts_covariance(state)

    def disc(x):
        return gaussian_discord(apply_channel(cov0, make_channel("thermal-noise", x, N)), direction)

    scheme = _backward_slope if eta - 2.0 * step >= 0.0 else _forward_slope
    p = scheme(disc, eta, step)
    p_half = scheme(disc, eta, 0.5 * step)
    # (p_half - p) / 3 is the Richardson error estimate of p_half
    if abs(p - p_half) / 3.0 > SLOPE_AGREEMENT * max(1.0, abs(p)):
        warnings.warn(
            f"slope estimates disagree: {p!r} (step {step}) vs {p_half!r} (step {step / 2})",
            RuntimeWarning,
            stacklevel=2,
        )
    return (4.0 * p_half - p) / 3.0


@dataclass(frozen=True)
class ThresholdResult:
    N_star: float
    lo: float
    hi: float
    p_lo: float
    p_hi: float


def threshold_N(
    state: StsParams,
    direction: Direction | str = Direction.MODE2,
    tol: float = 1e-6,
) -> ThresholdResult:
    """Reservoir photon number at which the initial slope changes sign.

    Raises NoRootError if the discord does not rise even at zero temperature.
    """
    def p(N):
        return initial_slope(state, N, direction)

    p0 = p(0.0)
    if p0 >= 0.0:
        raise NoRootError(f"initial slope at N=0 is {p0!r} >= 0: no rise to suppress")
    step = max(1.0, 0.5 * max(state.n1, state.n2))
    lo, hi, p_lo, p_hi = expand_bracket(p, 0.0, step, f_lo=p0)
    root = bisect(p, lo, hi, tol=tol, f_lo=p_lo, f_hi=p_hi)
    return ThresholdResult(root.x, root.lo, root.hi, root.f_lo, root.f_hi)


@dataclass(frozen=True)
class SlopeSurface:
    r: float
    N_grid: np.ndarray
    n1_grid: np.ndarray
    p: np.ndarray  # shape (len(n1_grid), len(N_grid))


def slope_surface(r: float, N_grid, n1_grid, direction=Direction.MODE2) -> SlopeSurface:
    """Initial slope over reservoir photons N and symmetric thermal photons n1 = n2."""
    N_grid = np.asarray(N_grid, dtype=float)
    n1_grid = np.asarray(n1_grid, dtype=float)
    p = np.empty((len(n1_grid), len(N_grid)))
    for i, n1 in enumerate(n1_grid):
        state = StsParams(r, n1, n1)
        for j, N in enumerate(N_grid):
            p[i, j] = initial_slope(state, N, direction)
    return SlopeSurface(r, N_grid, n1_grid, p)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float


def linear_fit(x, y) -> LinearFit:
    """Ordinary least squares y = slope * x + intercept."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return LinearFit(float(slope), float(intercept), r2)


def threshold_law(r: float, n1_values, direction=Direction.MODE2):
    """N*(n1) for symmetric states n1 = n2 and its least-squares line."""
    stars = [threshold_N(StsParams(r, n, n), direction).N_star for n in n1_values]
    return np.asarray(stars), linear_fit(n1_values, stars)


@dataclass(frozen=True)
class DiscordMaximum:
    param: float
    discord: float
    initial_discord: float
    boundary: bool

    @property
    def ratio(self) -> float:
        return self.discord / self.initial_discord if self.initial_discord > 0 else math.inf


def find_discord_max(cfg: SweepConfig, tol: float = 1e-6) -> DiscordMaximum:
    """Grid argmax of the sweep refined by golden-section search to ``tol`` in the parameter."""
    result = sweep_discord(cfg)
    values = result.column("discord")
    grid = np.asarray(cfg.grid)
    i = int(np.argmax(values))
    initial = float(values[0])
    if i in (0, len(grid) - 1):
        return DiscordMaximum(float(grid[i]), float(values[i]), initial, True)
    lo, hi = sorted((grid[i - 1], grid[i + 1]))

    def disc(x):
        return discord_at(cfg.state, cfg.family, x, cfg.N, cfg.direction)

    opt = golden_section_max(disc, lo, hi, tol=tol)
    if opt.fx < values[i]:
        return DiscordMaximum(float(grid[i]), float(values[i]), initial, False)
    return DiscordMaximum(opt.x, opt.fx, initial, False)
