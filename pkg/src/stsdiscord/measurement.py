"""Gaussian discord by direct optimisation over pure single-mode Gaussian measurements.

This route never touches the closed-form conditional entropy; it builds the
post-measurement covariance of the unmeasured mode,

    A' = A - C (B + sigma_M)^{-1} C^T,

for a measurement covariance sigma_M = R(theta) diag(s/2, 1/(2s)) R(theta)^T
and searches (s, theta). s = 1 is heterodyne, s -> 0 or infinity homodyne.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    PHYS_TOL,
    Direction,
    TwoModeCovariance,
    entropy_h,
    mutual_information,
    physicality_check,
)
from .exceptions import UnphysicalCovarianceError
from .optimize import golden_section_min

LOG_S_RANGE = (-20.0, 20.0)


def measurement_covariance(s: float, theta: float) -> np.ndarray:
    ct, st = math.cos(theta), math.sin(theta)
    rot = np.array([[ct, -st], [st, ct]])
    return rot @ np.diag([0.5 * s, 0.5 / s]) @ rot.T


def conditional_covariance(cov: TwoModeCovariance, s: float, theta: float) -> np.ndarray:
    """Covariance of mode 1 after a general-dyne measurement on mode 2."""
    sigma = cov.matrix()
    A, B, C = sigma[:2, :2], sigma[2:, 2:], sigma[:2, 2:]
    return A - C @ np.linalg.solve(B + measurement_covariance(s, theta), C.T)


def conditional_det(cov: TwoModeCovariance, log_s: float, theta: float) -> float:
    return float(np.linalg.det(conditional_covariance(cov, math.exp(log_s), theta)))


def classical_correlation(cov: TwoModeCovariance, s: float, theta: float = 0.0) -> float:
    """J for one fixed measurement: S(mode 1) minus the conditional entropy."""
    det = float(np.linalg.det(conditional_covariance(cov, s, theta)))
    return entropy_h(cov.a) - entropy_h(math.sqrt(max(det, 0.25)))


@dataclass(frozen=True)
class GeneraldyneResult:
    discord: float
    log_s: float
    theta: float
    conditional_det: float
    refined_2d: bool


def _best_on_axis(cov, theta, tol):
    res = golden_section_min(lambda t: conditional_det(cov, t, theta), *LOG_S_RANGE, tol=tol)
    return res.fx, res.x


def generaldyne_discord_full(
    cov: TwoModeCovariance,
    direction: Direction | str = Direction.MODE2,
    tol: float = 1e-9,
) -> GeneraldyneResult:
    direction = Direction.parse(direction)
    report = physicality_check(cov)
    if not report:
        raise UnphysicalCovarianceError(report.message)
    work = cov if direction is Direction.MODE2 else cov.swapped()

    axes = [(*_best_on_axis(work, th, tol), th) for th in (0.0, 0.5 * math.pi)]
    det, log_s, theta = min(axes)
    refined = False
    if abs(axes[0][0] - axes[1][0]) > 1e-8 * max(1.0, det):
        # off-axis optimum: coarse theta scan, then nested golden section
        refined = True
        grid = np.linspace(0.0, math.pi, 33)[:-1]
        scan = [(_best_on_axis(work, th, 1e-6)[0], th) for th in grid]
        _, th0 = min(scan)
        step = grid[1] - grid[0]
        res = golden_section_min(
            lambda th: _best_on_axis(work, th, tol)[0], th0 - step, th0 + step, tol=tol
        )
        if res.fx < det:
            det, log_s = _best_on_axis(work, res.x, tol)
            theta = res.x

    j = entropy_h(work.a) - entropy_h(math.sqrt(max(det, 0.25)))
    value = mutual_information(work) - j
    if -PHYS_TOL <= value < 0.0:
        value = 0.0
    return GeneraldyneResult(value, log_s, theta, det, refined)


def generaldyne_discord(cov: TwoModeCovariance, direction: Direction | str = Direction.MODE2) -> float:
    """Gaussian discord from a numerical search over general-dyne measurements."""
    return generaldyne_discord_full(cov, direction).discord
