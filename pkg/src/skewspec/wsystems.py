"""W-systems: weighted orthonormal bases with semiseparable differentiation.

A W-system takes phi_n = sqrt(w) p_n for an orthonormal polynomial family
p_n of the weight w; the differentiation matrix is skew-symmetric exactly
when w vanishes at both endpoints.  For the Laguerre weight x^alpha e^{-x}
on [0, inf) and the ultraspherical weight (1-x^2)^alpha on [-1, 1] the
matrix is semiseparable of rank 1 with explicit generators; the closed
forms here are pinned entry-by-entry against quadrature Galerkin integrals
<phi_m', phi_n> (see the test suite), which fixes the scale and sign of the
generator product in each case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor, lgamma, log

import numpy as np

from .orthopoly import eval_weighted, recurrence_coeffs
from .tsystems import BasisSpec

__all__ = [
    "SemiseparableRank1",
    "laguerre_w_eval",
    "laguerre_w_table",
    "ultra_w_eval",
    "ultra_w_table",
    "laguerre_w_diff",
    "ultra_w_diff",
    "w_diff_matrix",
    "weight_index",
]


@dataclass(frozen=True)
class SemiseparableRank1:
    """Rank-1 semiseparable skew-symmetric matrix from generator sequences.

    Realized entries:

        D[m, n] = lower_coeff * a[m] * b[n]    for m > n  (and m+n odd if
        D[m, n] = -lower_coeff * a[n] * b[m]   for m < n   parity_masked)
        D[m, m] = 0

    Skew-symmetry holds exactly by construction.  Generators are positive
    and individually ill-scaled (a -> 0, b -> inf while products stay
    moderate), so dense entries are realized as exp(log a + log b).
    """

    log_a: np.ndarray = field(repr=False)
    log_b: np.ndarray = field(repr=False)
    lower_coeff: float
    parity_masked: bool

    @property
    def size(self) -> int:
        return self.log_a.size

    @property
    def gen_a(self) -> np.ndarray:
        return np.exp(self.log_a)

    @property
    def gen_b(self) -> np.ndarray:
        return np.exp(self.log_b)

    @property
    def is_complex(self) -> bool:
        return False

    def transpose(self) -> "SemiseparableRank1":
        # real skew-symmetric: D^T = -D
        return SemiseparableRank1(self.log_a, self.log_b, -self.lower_coeff,
                                  self.parity_masked)

    def to_dense(self) -> np.ndarray:
        n = self.size
        m = np.arange(n)
        lower = self.lower_coeff * np.exp(self.log_a[:, None] + self.log_b[None, :])
        mask = m[:, None] > m[None, :]
        if self.parity_masked:
            mask &= (m[:, None] + m[None, :]) % 2 == 1
        D = np.where(mask, lower, 0.0)
        return D - D.T


def laguerre_w_eval(alpha: float, n: int, x) -> float | np.ndarray:
    """Laguerre W-system function
    phi_n(x) = sqrt(n!/Gamma(n+1+alpha)) x^{alpha/2} e^{-x/2} L_n^{(alpha)}(x).

    The weight is folded into the recurrence seed, so values are accurate
    up to n ~ 2000.  x = 0 is allowed for alpha >= 0 (limit value, 0 when
    alpha > 0); negative x or x = 0 with alpha < 0 is a domain error.
    """
    return laguerre_w_table(alpha, n, x)[n]


def laguerre_w_table(alpha: float, N: int, x) -> np.ndarray:
    """phi_0(x)..phi_N(x) of the Laguerre W-system."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa < 0):
        raise ValueError("laguerre W-system is defined on x >= 0")
    if alpha < 0 and np.any(xa == 0):
        raise ValueError("x = 0 requires alpha >= 0")
    rc = recurrence_coeffs("laguerre", max(N, 1), alpha=alpha)
    vals = eval_weighted(rc, x, N)
    # the plain recurrence yields positive leading coefficients; classical
    # L_n^{(alpha)} alternates, so odd orders flip sign
    if vals.ndim == 1:
        vals = vals.copy()
        vals[1::2] *= -1.0
    else:
        vals[1::2] *= -1.0
    return vals


def ultra_w_eval(alpha: float, n: int, x) -> float | np.ndarray:
    """Ultraspherical W-system function: the orthonormal Jacobi(alpha, alpha)
    polynomial times (1-x^2)^{alpha/2}; vanishes at x = +-1 for alpha > 0."""
    return ultra_w_table(alpha, n, x)[n]


def ultra_w_table(alpha: float, N: int, x) -> np.ndarray:
    """phi_0(x)..phi_N(x) of the ultraspherical W-system on [-1, 1]."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(np.abs(xa) > 1):
        raise ValueError("ultraspherical W-system is defined on |x| <= 1")
    if alpha < 0 and np.any(np.abs(xa) == 1):
        raise ValueError("x = +-1 requires alpha >= 0")
    rc = recurrence_coeffs("jacobi", max(N, 1), alpha=alpha, beta=alpha)
    return eval_weighted(rc, x, N)


def laguerre_w_diff(alpha: float, N: int) -> SemiseparableRank1:
    """Differentiation matrix of the Laguerre W-system, indices 0..N.

    Generators a_m = sqrt(m!/Gamma(m+1+alpha)), b_n = 1/a_n, with lower
    triangle -(1/2) a_m b_n (quadrature-verified).  Valid for alpha > 1.
    """
    if alpha <= 1:
        raise ValueError("laguerre W differentiation matrix requires alpha > 1")
    if N < 1:
        raise ValueError("N must be at least 1")
    m = np.arange(N + 1, dtype=float)
    lg_fact = np.array([lgamma(k + 1.0) for k in m])
    lg_gam = np.array([lgamma(k + 1.0 + alpha) for k in m])
    log_a = 0.5 * (lg_fact - lg_gam)
    return SemiseparableRank1(log_a, -log_a, lower_coeff=-0.5, parity_masked=False)


def ultra_w_diff(alpha: float, N: int) -> SemiseparableRank1:
    """Differentiation matrix of the ultraspherical W-system, indices 0..N.

    Generators a_m = sqrt(m!(2m+2a+1)/(2 Gamma(m+2a+1))),
    b_n = sqrt((2n+2a+1) Gamma(n+2a+1)/(2 n!)); entries vanish for m+n even.
    The lower-triangle coefficient is +1, not -1/2: the quadrature Galerkin
    oracle <phi_m', phi_n> fixes it unambiguously (a_1 b_1 ... products match
    the integrals exactly with coefficient +1 for every alpha > 1 tested).
    """
    if alpha <= 1:
        raise ValueError("ultraspherical W differentiation matrix requires alpha > 1")
    if N < 1:
        raise ValueError("N must be at least 1")
    m = np.arange(N + 1, dtype=float)
    lg_fact = np.array([lgamma(k + 1.0) for k in m])
    lg_gam = np.array([lgamma(k + 2.0 * alpha + 1.0) for k in m])
    log_odd = np.log(2.0 * m + 2.0 * alpha + 1.0)
    log_a = 0.5 * (lg_fact + log_odd - log(2.0) - lg_gam)
    log_b = 0.5 * (log_odd + lg_gam - log(2.0) - lg_fact)
    return SemiseparableRank1(log_a, log_b, lower_coeff=1.0, parity_masked=True)


def w_diff_matrix(spec: BasisSpec, N: int) -> SemiseparableRank1:
    """Differentiation matrix for a W-system BasisSpec."""
    if spec.kind == "laguerre_w":
        return laguerre_w_diff(spec.alpha, N)
    if spec.kind == "ultraspherical_w":
        return ultra_w_diff(spec.alpha, N)
    raise ValueError(f"w_diff_matrix needs a W-system, got {spec.kind!r}")


def weight_index(kind: str, alpha: float) -> int:
    """Weight index ind w = floor(alpha - 1) + 2 for alpha > 1.

    The largest s such that every power D^l, l <= s, of the differentiation
    matrix stays bounded under truncation refinement; D^{s+1} blows up.
    Same formula for the Laguerre and ultraspherical weights.
    """
    if kind not in ("laguerre_w", "ultraspherical_w"):
        raise ValueError(f"weight index is defined for W-systems, got {kind!r}")
    if alpha <= 1:
        raise ValueError("weight index formula requires alpha > 1")
    return int(floor(alpha - 1.0)) + 2
