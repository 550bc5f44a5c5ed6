"""Two-mode squeezed thermal states (STS).

An STS is ``S(r) (rho_th(n1) x rho_th(n2)) S(r)^dagger`` with the two-mode
squeezer ``S(r) = exp[r (a1^dag a2^dag - a1 a2)]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ParameterError
from .gaussian import TwoModeCovariance


@dataclass(frozen=True)
class StsParams:
    r: float
    n1: float
    n2: float

    def __post_init__(self):
        for name in ("r", "n1", "n2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")

    @property
    def n_r(self) -> float:
        """Squeezing photon number sinh(r)^2."""
        return math.sinh(self.r) ** 2


@dataclass(frozen=True)
class SeparabilityResult:
    separable: bool
    boundary: bool
    lhs: float
    n_r: float

    def __bool__(self) -> bool:
        return self.separable


def sts_covariance(p: StsParams) -> TwoModeCovariance:
    nr = p.n_r
    a = (1 + nr) * p.n1 + nr * p.n2 + nr + 0.5
    b = nr * p.n1 + (1 + nr) * p.n2 + nr + 0.5
    # sqrt(nr (1 + nr)) == sinh r cosh r; the product form is exact at r = 0
    c1 = -(1 + p.n1 + p.n2) * math.sinh(p.r) * math.cosh(p.r)
    return TwoModeCovariance(a, b, c1, -c1 if c1 else 0.0)


def characteristic_function(p: StsParams, lambda1: complex, lambda2: complex) -> complex:
    """Symmetrically ordered characteristic function Tr[rho D(lambda1) D(lambda2)].

    Works elementwise on numpy arrays of query points.
    """
    ch, sh = math.cosh(p.r), math.sinh(p.r)
    lambda1 = np.asarray(lambda1, dtype=complex)
    lambda2 = np.asarray(lambda2, dtype=complex)
    u = ch * lambda1 - sh * np.conj(lambda2)
    v = ch * lambda2 - sh * np.conj(lambda1)
    out = np.exp(-(p.n1 + 0.5) * np.abs(u) ** 2 - (p.n2 + 0.5) * np.abs(v) ** 2)
    return out.astype(complex) if out.ndim else complex(out)


def lambdas_from_quadratures(alpha1, beta1, alpha2, beta2):
    """Map real phase-space coordinates to complex arguments, lambda = (alpha + i beta)/sqrt 2."""
    root2 = math.sqrt(2.0)
    lam1 = (np.asarray(alpha1) + 1j * np.asarray(beta1)) / root2
    lam2 = (np.asarray(alpha2) + 1j * np.asarray(beta2)) / root2
    return lam1, lam2


def gaussian_charfn(cov: TwoModeCovariance, alpha1, beta1, alpha2, beta2):
    """exp(-Lambda^T sigma Lambda / 2) with Lambda = (alpha1, beta1, alpha2, beta2)."""
    lam = np.stack(np.broadcast_arrays(alpha1, beta1, alpha2, beta2), axis=-1).astype(float)
    quad = np.einsum("...i,ij,...j->...", lam, cov.matrix(), lam)
    return np.exp(-0.5 * quad)


def is_separable(p: StsParams) -> SeparabilityResult:
    """Sufficient separability test n1 n2 / (1 + n1 + n2) > sinh(r)^2.

    One-directional: a negative answer does not certify entanglement.
    Equality is reported as not separable with ``boundary=True``.
    """
    lhs = p.n1 * p.n2 / (1 + p.n1 + p.n2)
    nr = p.n_r
    return SeparabilityResult(separable=lhs > nr, boundary=lhs == nr, lhs=lhs, n_r=nr)


def separability_threshold_r(n: float) -> float:
    """Squeezing at which the criterion flips for n1 = n2 = n."""
    return math.asinh(math.sqrt(n * n / (1 + 2 * n)))
