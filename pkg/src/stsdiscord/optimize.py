"""Scalar golden-section search and bracketing bisection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .exceptions import ConvergenceError, NoRootError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScalarOptimum:
    x: float
    fx: float
    evaluations: int


def golden_section_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
    max_iter: int = 500,
) -> ScalarOptimum:
    """Minimise a unimodal ``f`` on [lo, hi] until the bracket is narrower than ``tol``.

    The returned point is the best evaluated one, so the endpoints are
    compared too: a monotone ``f`` yields the boundary minimiser.
    """
    lo, hi = min(lo, hi), max(lo, hi)
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    evals = 2
    it = 0
    while hi - lo > tol:
        if it >= max_iter:
            best = min((f1, x1), (f2, x2))
            raise ConvergenceError(
                f"golden section did not reach tol={tol} in {max_iter} steps",
                best=ScalarOptimum(best[1], best[0], evals),
            )
        it += 1
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
        evals += 1
    candidates = [(f1, x1), (f2, x2), (f(lo), lo), (f(hi), hi)]
    evals += 2
    fx, x = min(candidates)
    return ScalarOptimum(x, fx, evals)


def golden_section_max(f, lo, hi, tol=1e-8, max_iter=500) -> ScalarOptimum:
    res = golden_section_min(lambda x: -f(x), lo, hi, tol, max_iter)
    return ScalarOptimum(res.x, -res.fx, res.evaluations)


@dataclass(frozen=True)
class Root:
    x: float
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    iterations: int


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-6,
    f_lo: float | None = None,
    f_hi: float | None = None,
    max_iter: int = 200,
) -> Root:
    """Bisection on a sign-changing bracket until ``hi - lo <= tol``."""
    f_lo = f(lo) if f_lo is None else f_lo
    f_hi = f(hi) if f_hi is None else f_hi
    if f_lo == 0.0:
        return Root(lo, lo, lo, f_lo, f_lo, 0)
    if f_hi == 0.0:
        return Root(hi, hi, hi, f_hi, f_hi, 0)
    if (f_lo > 0) == (f_hi > 0):
        raise NoRootError(f"no sign change on [{lo}, {hi}]: f={f_lo!r}, {f_hi!r}")
    it = 0
    while hi - lo > tol:
        if it >= max_iter:
            raise ConvergenceError("bisection exceeded max_iter")
        it += 1
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return Root(mid, mid, mid, 0.0, 0.0, it)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return Root(0.5 * (lo + hi), lo, hi, f_lo, f_hi, it)


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    step: float,
    f_lo: float | None = None,
    factor: float = 2.0,
    limit: float = 1e9,
) -> tuple[float, float, float, float]:
    """Grow ``hi = lo + step * factor**j`` until f changes sign; returns (lo, hi, f_lo, f_hi).

    ``lo`` is advanced to the last point with the original sign.
    """
    f_lo = f(lo) if f_lo is None else f_lo
    hi = lo + step
    while hi <= limit:
        f_hi = f(hi)
        if (f_hi > 0) != (f_lo > 0) or f_hi == 0.0:
            return lo, hi, f_lo, f_hi
        lo, f_lo = hi, f_hi
        step *= factor
        hi = lo + step
    raise NoRootError(f"no sign change found below {limit}")
