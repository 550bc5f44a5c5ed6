"""Brute-force Fock-space oracle for squeezed thermal states and the lossy channel.

Nothing here uses the covariance formulas: states are built by exponentiating
the two-mode squeezer on a truncated number basis, the thermal-noise channel
is a beam splitter against an explicit environment mode, and entropies come
from eigenvalues of the resulting density matrices.

Storage. Every operator met here commutes with the photon-number difference
n1 - n2 (the squeezer and the phase-insensitive channel both do), so the
density matrix is block diagonal in k = n1 - n2 and all other entries vanish
identically. A ``TruncatedState`` keeps exactly those blocks::

    blocks[k + d - 1, m, m'] = <m + k, m| rho |m' + k, m'>

for per-mode cutoff d and mode-2 photon numbers m, m' < d. Entries whose
mode-1 index falls outside [0, d) are zero. ``to_dense`` rebuilds the full
d^2 x d^2 matrix for small cutoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import ParameterError, TruncationBudgetError
from .gaussian import TwoModeCovariance
from .linalg import expm, jacobi_eigvalsh
from .states import StsParams

TRUNCATION_BUDGET = 1e-10
EIG_FLOOR = 1e-14
MIN_CUTOFF = 20


@dataclass(frozen=True)
class TruncatedState:
    cutoff: int
    blocks: np.ndarray
    trace_deficit: float

    @property
    def trace(self) -> float:
        return float(np.einsum("kii->", self.blocks))

    def valid_mask(self) -> np.ndarray:
        """(2d-1, d) boolean mask of basis states |m + k, m> inside the cutoff."""
        d = self.cutoff
        k = np.arange(-(d - 1), d)[:, None]
        n1 = np.arange(d)[None, :] + k
        return (n1 >= 0) & (n1 < d)

    def to_dense(self) -> np.ndarray:
        d = self.cutoff
        if d > 40:
            raise ParameterError("dense form limited to cutoff <= 40")
        rho = np.zeros((d * d, d * d))
        m = np.arange(d)
        for idx, k in enumerate(range(-(d - 1), d)):
            n1 = m + k
            ok = (n1 >= 0) & (n1 < d)
            flat = n1[ok] * d + m[ok]
            rho[np.ix_(flat, flat)] = self.blocks[idx][np.ix_(m[ok], m[ok])]
        return rho


def thermal_populations(n_mean: float, size: int) -> np.ndarray:
    """Bose-Einstein populations N^n / (1 + N)^(n + 1), n < size."""
    if n_mean == 0:
        out = np.zeros(size)
        out[0] = 1.0
        return out
    q = n_mean / (1.0 + n_mean)
    return (1.0 - q) * q ** np.arange(size)


def thermal_tail(n_mean: float, cutoff: int) -> float:
    """Probability mass of a thermal state at photon numbers >= cutoff."""
    if n_mean == 0:
        return 0.0
    return (n_mean / (1.0 + n_mean)) ** cutoff


def cutoff_for(n_mean: float, budget: float = TRUNCATION_BUDGET, minimum: int = 1) -> int:
    """Smallest cutoff whose thermal tail is below ``budget``."""
    if n_mean == 0:
        return minimum
    q = n_mean / (1.0 + n_mean)
    return max(minimum, int(math.ceil(math.log(budget) / math.log(q))))


def max_mode_occupation(p: StsParams) -> float:
    """Largest mean photon number of either mode after squeezing (upper bound)."""
    return math.cosh(2.0 * p.r) * (max(p.n1, p.n2) + 0.5) - 0.5


def default_cutoff(p: StsParams, budget: float = TRUNCATION_BUDGET) -> int:
    return cutoff_for(max_mode_occupation(p), budget, MIN_CUTOFF)


def _sector_basis(k: int, size: int):
    lo = max(0, -k)
    m = np.arange(lo, size - max(0, k))
    return m + k, m


def _squeezer_block(r: float, k: int, size: int):
    n1, n2 = _sector_basis(k, size)
    g = np.zeros((len(n2), len(n2)))
    if len(n2) > 1:
        amp = r * np.sqrt((n1[:-1] + 1.0) * (n2[:-1] + 1.0))
        idx = np.arange(len(n2) - 1)
        g[idx + 1, idx] = amp
        g[idx, idx + 1] = -amp
    return n1, n2, expm(g)


def squeezer_unitarity_defect(r: float, cutoff: int) -> float:
    """max_k ||U_k^T U_k - 1|| for the truncated two-mode squeezer."""
    worst = 0.0
    for k in range(-(cutoff - 1), cutoff):
        _, n2, u = _squeezer_block(r, k, cutoff)
        worst = max(worst, float(np.abs(u.T @ u - np.eye(len(n2))).max()))
    return worst


def build_sts_fock(
    p: StsParams,
    cutoff: int | None = None,
    budget: float = TRUNCATION_BUDGET,
    pad: int | None = None,
) -> TruncatedState:
    """Squeezed thermal state exp[r(a1^dag a2^dag - a1 a2)] (rho_1 x rho_2) exp[...]^dag.

    The squeezer is exponentiated on a padded basis of ``cutoff + pad``
    photons per mode and the result is cut back to ``cutoff``, so the
    reported ``trace_deficit`` measures genuine leakage past the cutoff.
    """
    need = cutoff_for(max_mode_occupation(p), budget, 1)
    d = default_cutoff(p, budget) if cutoff is None else int(cutoff)
    if d < 1:
        raise ParameterError("cutoff must be positive")
    if need > d:
        raise TruncationBudgetError(
            f"cutoff {d} loses more than {budget:g} of the state; use at least {need}",
            suggested_cutoff=need,
        )
    pad = max(10, d // 2) if pad is None else pad
    size = d + pad
    p1 = thermal_populations(p.n1, size)
    p2 = thermal_populations(p.n2, size)
    blocks = np.zeros((2 * d - 1, d, d))
    for k in range(-(size - 1), size):
        if abs(k) >= d:
            continue
        n1, n2, u = _squeezer_block(p.r, k, size)
        rho_k = (u * (p1[n1] * p2[n2])) @ u.T
        keep = (n1 < d) & (n2 < d)
        m = n2[keep]
        blocks[k + d - 1][np.ix_(m, m)] = rho_k[np.ix_(keep, keep)]
    blocks = 0.5 * (blocks + blocks.transpose(0, 2, 1))
    deficit = 1.0 - float(np.einsum("kii->", blocks))
    if deficit > 10 * budget:
        raise TruncationBudgetError(
            f"trace deficit {deficit:.3g} exceeds budget {budget:g} at cutoff {d}",
            suggested_cutoff=int(1.25 * d) + 1,
        )
    return TruncatedState(d, blocks, deficit)


def product_fock(n1: float, n2: float, cutoff: int) -> TruncatedState:
    """Uncorrelated thermal product state, built without any squeezer."""
    return build_sts_fock(StsParams(0.0, n1, n2), cutoff=cutoff, budget=1.0, pad=0)


def _eigvalsh(mats: np.ndarray, method: str) -> np.ndarray:
    if method == "lapack":
        return np.linalg.eigvalsh(mats)
    if method == "jacobi":
        return jacobi_eigvalsh(mats)
    raise ParameterError(f"unknown eigensolver {method!r}")


def entropy_of_spectrum(vals) -> float:
    vals = np.asarray(vals).ravel()
    vals = vals[vals > EIG_FLOOR]
    return float(-np.sum(vals * np.log(vals)))


def entropy_matrix(rho: np.ndarray, method: str = "lapack") -> float:
    """Von Neumann entropy of a dense Hermitian density matrix."""
    return entropy_of_spectrum(_eigvalsh(rho, method))


def spectrum(s: TruncatedState, method: str = "lapack") -> np.ndarray:
    return np.sort(_eigvalsh(s.blocks, method).ravel())


def entropy_fock(s: TruncatedState, method: str = "lapack") -> float:
    """Joint entropy -Tr rho ln rho of a truncated two-mode state (nats)."""
    return entropy_of_spectrum(_eigvalsh(s.blocks, method))


def reduced_state(s: TruncatedState, mode: int) -> np.ndarray:
    """Partial trace onto ``mode`` (1 or 2) as a dense d x d matrix.

    Off-diagonal elements of either marginal vanish by the sector structure,
    so the trace is a sum over block diagonals.
    """
    d = s.cutoff
    diag = np.einsum("kii->ki", s.blocks)
    out = np.zeros(d)
    if mode == 2:
        out = diag.sum(axis=0)
    elif mode == 1:
        m = np.arange(d)
        for idx, k in enumerate(range(-(d - 1), d)):
            n1 = m + k
            ok = (n1 >= 0) & (n1 < d)
            np.add.at(out, n1[ok], diag[idx][ok])
    else:
        raise ParameterError("mode must be 1 or 2")
    return np.diag(out)


def marginal_entropy(s: TruncatedState, mode: int, method: str = "lapack") -> float:
    return entropy_matrix(reduced_state(s, mode), method)


def mutual_information_fock(s: TruncatedState, method: str = "lapack") -> float:
    return (
        marginal_entropy(s, 1, method) + marginal_entropy(s, 2, method) - entropy_fock(s, method)
    )


def covariance_from_fock(s: TruncatedState) -> TwoModeCovariance:
    """Symmetrised second moments in the characteristic-function ordering.

    With chi(Lambda) = exp(-Lambda^T sigma Lambda / 2) and D(lambda) =
    exp[i(beta x - alpha p)], the alpha slots pair with -p and the beta
    slots with x, so c1 = <p1 p2> = -Re<a1 a2> and c2 = <x1 x2> = Re<a1 a2>.
    First moments and <a_j^2>, <a1^dag a2> vanish by the sector structure.
    """
    d = s.cutoff
    m = np.arange(d, dtype=float)
    diag = np.einsum("kii->ki", s.blocks)
    ks = np.arange(-(d - 1), d, dtype=float)[:, None]
    n1 = m[None, :] + ks
    valid = (n1 >= 0) & (n1 < d)
    mean_n2 = float(np.sum(diag * m[None, :]))
    mean_n1 = float(np.sum(np.where(valid, diag * n1, 0.0)))
    # <a1 a2> = sum_m rho_k[m, m-1] sqrt(n1(m) m)
    sub = np.diagonal(s.blocks, offset=-1, axis1=1, axis2=2)  # rho_k[m, m-1], m >= 1
    n1_sub = n1[:, 1:]
    weight = np.where((n1_sub >= 1) & (n1_sub < d), np.sqrt(np.clip(n1_sub, 0, None) * m[1:]), 0.0)
    a1a2 = float(np.sum(sub * weight))
    return TwoModeCovariance(mean_n1 + 0.5, mean_n2 + 0.5, -a1a2, a1a2)


@lru_cache(maxsize=64)
def _beam_splitter_block(theta: float, total: int) -> np.ndarray:
    """exp[theta (a2^dag a_e - a2 a_e^dag)] on the subspace n2 + n_e = total.

    Basis index j is the environment photon number (n2 = total - j); the
    block is exact because the beam splitter conserves total photon number.
    """
    j = np.arange(total + 1, dtype=float)
    g = np.zeros((total + 1, total + 1))
    if total:
        idx = np.arange(1, total + 1)
        # a2^dag a_e : |total - j, j> -> sqrt((total - j + 1) j) |total - j + 1, j - 1>
        amp = theta * np.sqrt((total - j[idx] + 1.0) * j[idx])
        g[idx - 1, idx] = amp
        g[idx, idx - 1] = -amp
    return expm(g)


def lossy_channel_fock(
    s: TruncatedState,
    eta: float,
    N_env: float = 0.0,
    env_cutoff: int | None = None,
    budget: float = TRUNCATION_BUDGET,
) -> TruncatedState:
    """Thermal-noise channel on mode 2 by explicit beam-splitter dilation.

    The environment mode starts in a thermal state with ``N_env`` photons,
    is mixed with mode 2 on a beam splitter of transmissivity ``eta`` and
    traced out. Each (environment in, environment out) = (e, j) pair acts
    on mode 2 as a Kraus operator that shifts its photon number by e - j.
    """
    if not 0.0 <= eta <= 1.0:
        raise ParameterError(f"eta must lie in [0, 1], got {eta!r}")
    if N_env < 0:
        raise ParameterError("N_env must be >= 0")
    need = cutoff_for(N_env, budget, 1)
    de = need if env_cutoff is None else int(env_cutoff)
    if thermal_tail(N_env, de) > budget:
        raise TruncationBudgetError(
            f"environment cutoff {de} exceeds budget {budget:g}; use at least {need}",
            suggested_cutoff=need,
        )
    d = s.cutoff
    theta = math.acos(math.sqrt(eta))
    pe = thermal_populations(N_env, de)
    m = np.arange(d)

    # kappa[e, j, m]: amplitude <m + e - j, j| B |m, e> sqrt(p_e)
    shifts: dict[int, np.ndarray] = {}
    for e in range(de):
        if pe[e] == 0.0:
            continue
        amps = np.zeros((d + e, d))
        for mm in range(d):
            block = _beam_splitter_block(theta, mm + e)
            amps[: mm + e + 1, mm] = block[:, e]
        for j in range(d + e):
            kappa = math.sqrt(pe[e]) * amps[j]
            if not np.any(kappa):
                continue
            w = np.outer(kappa, kappa)
            sft = e - j
            shifts[sft] = shifts[sft] + w if sft in shifts else w

    out = np.zeros_like(s.blocks)
    nb = 2 * d - 1
    for sft, w in shifts.items():
        if abs(sft) >= d:
            continue
        # source block k maps to k - sft; mode-2 index m maps to m + sft
        src_m = slice(max(0, -sft), d - max(0, sft))
        dst_m = slice(max(0, sft), d - max(0, -sft))
        src_k = slice(max(0, sft), nb - max(0, -sft))
        dst_k = slice(max(0, -sft), nb - max(0, sft))
        out[dst_k, dst_m, dst_m] += w[src_m, src_m][None] * s.blocks[src_k, src_m, src_m]
    # drop anything that landed on invalid mode-1 indices (cannot happen for exact inputs)
    mask = TruncatedState(d, out, 0.0).valid_mask()
    out *= mask[:, :, None] & mask[:, None, :]
    out = 0.5 * (out + out.transpose(0, 2, 1))
    deficit = 1.0 - float(np.einsum("kii->", out))
    return TruncatedState(d, out, deficit)


@dataclass(frozen=True)
class OracleComparison:
    cutoff: int
    trace_deficit: float
    deviations: dict
    fock: dict
    gaussian: dict

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def passed(self, tol: float = 1e-5) -> bool:
        return self.max_deviation < tol


def compare_with_gaussian(
    p: StsParams,
    eta: float | None = None,
    N_env: float = 0.0,
    cutoff: int | None = None,
    budget: float = TRUNCATION_BUDGET,
    method: str = "lapack",
) -> OracleComparison:
    """Fock-space entropies and moments against the symplectic formulas.

    With ``eta`` given the lossy channel is applied (by dilation on the Fock
    side, by the covariance update on the Gaussian side).
    """
    from .channels import ThermalNoise, apply_channel
    from .gaussian import entropy_h, symplectic_data
    from .states import sts_covariance

    state = build_sts_fock(p, cutoff, budget)
    cov = sts_covariance(p)
    if eta is not None:
        state = lossy_channel_fock(state, eta, N_env, budget=budget)
        cov = apply_channel(cov, ThermalNoise(eta, N_env))
    sd = symplectic_data(cov)
    gauss = {
        "s1": entropy_h(cov.a),
        "s2": entropy_h(cov.b),
        "s12": entropy_h(sd.d_minus) + entropy_h(sd.d_plus),
        "a": cov.a,
        "b": cov.b,
        "c1": cov.c1,
        "c2": cov.c2,
    }
    gauss["mutual_information"] = gauss["s1"] + gauss["s2"] - gauss["s12"]
    fcov = covariance_from_fock(state)
    fock = {
        "s1": marginal_entropy(state, 1, method),
        "s2": marginal_entropy(state, 2, method),
        "s12": entropy_fock(state, method),
        "a": fcov.a,
        "b": fcov.b,
        "c1": fcov.c1,
        "c2": fcov.c2,
    }
    fock["mutual_information"] = fock["s1"] + fock["s2"] - fock["s12"]
    dev = {key: abs(fock[key] - gauss[key]) for key in gauss}
    return OracleComparison(state.cutoff, state.trace_deficit, dev, fock, gauss)
