"""Dense matrix exponential and symmetric eigensolver used by the Fock-space oracle."""

from __future__ import annotations

import math

import numpy as np

from .exceptions import ConvergenceError

EXPM_TOL = 1e-14


def expm(m: np.ndarray, tol: float = EXPM_TOL, max_terms: int = 60) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The matrix is scaled by 2**-s so its 1-norm is at most 1/2; the series
    stops once the next term is below ``tol`` relative to the partial sum.
    """
    m = np.asarray(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("expm needs a square matrix")
    norm = np.linalg.norm(m, 1) if n else 0.0
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    scaled = m / (2.0**s)
    out = np.eye(n, dtype=np.result_type(m, float))
    term = out.copy()
    for j in range(1, max_terms + 1):
        term = term @ scaled / j
        out = out + term
        if np.linalg.norm(term, 1) <= tol * np.linalg.norm(out, 1):
            break
    else:
        raise ConvergenceError(f"Taylor series did not converge in {max_terms} terms")
    for _ in range(s):
        out = out @ out
    return out


def _round_robin(n: int):
    """Pairings for one Jacobi sweep; every index pair appears exactly once (n even)."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        rounds.append([(players[i], players[n - 1 - i]) for i in range(n // 2)])
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigvalsh(
    mats: np.ndarray, tol: float = 1e-14, max_sweeps: int = 30
) -> np.ndarray:
    """Eigenvalues of real symmetric matrices by cyclic Jacobi rotations.

    Accepts a single (n, n) matrix or a stack (..., n, n). Rotations are
    applied in round-robin order, n/2 disjoint pairs at a time, which lets a
    whole stack advance together. Returns ascending eigenvalues.
    """
    a = np.array(mats, dtype=float, copy=True)
    single = a.ndim == 2
    if single:
        a = a[None]
    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = a.reshape(-1, n, n)
    if n % 2:
        # decoupled padding entry: its rotations have zero angle, so it never mixes
        a = np.pad(a, ((0, 0), (0, 1), (0, 1)))
    m = a.shape[-1]
    rounds = [tuple(np.array(col) for col in zip(*pairs)) for pairs in _round_robin(m)]
    offmask = 1.0 - np.eye(m)
    scale = np.maximum(np.linalg.norm(a, axis=(1, 2)), np.finfo(float).tiny)

    for _ in range(max_sweeps):
        off = np.linalg.norm(a * offmask, axis=(1, 2))
        if np.all(off <= tol * scale):
            break
        for p, q in rounds:
            app = a[:, p, p]
            aqq = a[:, q, q]
            apq = a[:, p, q]
            nz = apq != 0.0
            safe = np.where(nz, apq, 1.0)
            with np.errstate(over="ignore"):
                tau = (aqq - app) / (2.0 * safe)
                t = np.where(nz, np.sign(tau + (tau == 0)) / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            rows_p = a[:, p, :].copy()
            rows_q = a[:, q, :]
            a[:, p, :] = c[..., None] * rows_p - s[..., None] * rows_q
            a[:, q, :] = s[..., None] * rows_p + c[..., None] * rows_q
            cols_p = a[:, :, p].copy()
            cols_q = a[:, :, q]
            a[:, :, p] = c[:, None, :] * cols_p - s[:, None, :] * cols_q
            a[:, :, q] = s[:, None, :] * cols_p + c[:, None, :] * cols_q
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    vals = np.diagonal(a, axis1=1, axis2=2)[:, :n]
    vals = np.sort(vals, axis=1).reshape(*batch_shape, n)
    return vals[0] if single else vals
