"""Orthonormal polynomial recurrences, evaluation and Gauss quadrature.

Every basis and transform in this package is built on top of the symmetric
(orthonormal-form) three-term recurrence

    x p_n(x) = b_{n-1} p_{n-1}(x) + c_n p_n(x) + b_n p_{n+1}(x),

whose coefficients are exactly the entries of the Jacobi matrix of the
measure.  Carrying the recurrence in orthonormal rather than monic form
avoids overflow and feeds the Golub-Welsch eigenproblem directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lgamma, log

import numpy as np

__all__ = [
    "RecurrenceCoeffs",
    "Quadrature",
    "NumericalError",
    "recurrence_coeffs",
    "eval_orthonormal",
    "eval_weighted",
    "gauss_quadrature",
    "tridiag_eigenvalues",
]

_FAMILIES = ("legendre", "hermite", "laguerre", "jacobi")


class NumericalError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Orthonormal-form recurrence data for a classical polynomial family.

    Attributes
    ----------
    family : str
        One of ``legendre``, ``hermite``, ``laguerre``, ``jacobi``.
    params : tuple of float
        ``()`` for Legendre/Hermite, ``(alpha,)`` for Laguerre,
        ``(alpha, beta)`` for Jacobi.
    diag : ndarray
        Recurrence diagonal c_0..c_{n_max} (zero for even weights).
    offdiag : ndarray
        Positive off-diagonal b_0..b_{n_max - 1} (Favard positivity).
    mu0 : float
        Zeroth moment of the measure, so p_0 = 1/sqrt(mu0).
    """

    family: str
    params: tuple
    diag: np.ndarray = field(repr=False)
    offdiag: np.ndarray = field(repr=False)
    mu0: float

    def __post_init__(self):
        if np.any(self.offdiag <= 0):
            raise ValueError("off-diagonal recurrence coefficients must be positive")

    @property
    def length(self) -> int:
        return self.diag.size - 1

    def log_weight(self, x):
        """log w(x) of the family's weight function, elementwise.

        Endpoint zeros of the weight map to -inf, which downstream scaled
        recurrences turn into the correct limit value 0.
        """
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            if self.family == "legendre":
                return np.zeros_like(x)
            if self.family == "hermite":
                return -(x * x)
            if self.family == "laguerre":
                (alpha,) = self.params
                lw = -x
                if alpha != 0.0:
                    lw = lw + alpha * np.log(x)
                return lw
            (alpha, beta) = self.params
            lw = np.zeros_like(x)
            if alpha != 0.0:
                lw = lw + alpha * np.log1p(-x)
            if beta != 0.0:
                lw = lw + beta * np.log1p(x)
            return lw


@dataclass(frozen=True)
class Quadrature:
    """Gauss rule for a classical measure.

    ``weights`` integrate against the measure w(x)dx; ``weights_over_w``
    are the same Christoffel numbers divided by w at the nodes, which is
    the numerically safe form for plain-dx integrals of weighted functions
    (no underflow for far-out nodes).
    """

    nodes: np.ndarray
    weights: np.ndarray
    weights_over_w: np.ndarray

    def integrate(self, values) -> float | complex:
        """Integrate f dmu from samples of f at the nodes."""
        return np.asarray(values) @ self.weights


def recurrence_coeffs(family: str, n_max: int, alpha: float | None = None,
                      beta: float | None = None) -> RecurrenceCoeffs:
    """Orthonormal recurrence coefficients for 0 <= n <= n_max.

    Parameters follow the classical constraints: Laguerre needs
    ``alpha > -1``, Jacobi needs ``alpha, beta > -1``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    family = family.lower()
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}, expected one of {_FAMILIES}")

    n = np.arange(n_max + 1, dtype=float)
    k = n[:-1] + 1.0  # 1..n_max, indexes b_{k-1}

    if family == "legendre":
        diag = np.zeros(n_max + 1)
        offdiag = k / np.sqrt(4.0 * k * k - 1.0)
        return RecurrenceCoeffs("legendre", (), diag, offdiag, 2.0)

    if family == "hermite":
        diag = np.zeros(n_max + 1)
        offdiag = np.sqrt(k / 2.0)
        return RecurrenceCoeffs("hermite", (), diag, offdiag, np.sqrt(np.pi))

    if family == "laguerre":
        if alpha is None or alpha <= -1:
            raise ValueError("laguerre requires alpha > -1")
        diag = 2.0 * n + alpha + 1.0
        offdiag = np.sqrt(k * (k + alpha))
        return RecurrenceCoeffs("laguerre", (float(alpha),), diag, offdiag,
                                np.exp(lgamma(alpha + 1.0)))

    if alpha is None or beta is None or alpha <= -1 or beta <= -1:
        raise ValueError("jacobi requires alpha > -1 and beta > -1")
    s = alpha + beta
    diag = np.empty(n_max + 1)
    diag[0] = (beta - alpha) / (s + 2.0)
    nn = n[1:]
    diag[1:] = (beta * beta - alpha * alpha) / ((2.0 * nn + s) * (2.0 * nn + s + 2.0))
    # monic beta_k, k = 1..n_max; b_{k-1} = sqrt(beta_k)
    bk = (4.0 * k * (k + alpha) * (k + beta) * (k + s)
          / ((2.0 * k + s) ** 2 * (2.0 * k + s + 1.0) * (2.0 * k + s - 1.0)))
    mu0 = np.exp((s + 1.0) * log(2.0) + lgamma(alpha + 1.0) + lgamma(beta + 1.0)
                 - lgamma(s + 2.0))
    return RecurrenceCoeffs("jacobi", (float(alpha), float(beta)),
                            diag, np.sqrt(bk), mu0)


def eval_orthonormal(rc: RecurrenceCoeffs, x, N: int) -> np.ndarray:
    """Evaluate p_0(x)..p_N(x) by forward recurrence.

    Returns shape (N+1,) for scalar x, else (N+1, len(x)).
    """
    if N > rc.length:
        raise ValueError(f"N={N} exceeds stored coefficients (length {rc.length})")
    scalar = np.isscalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((N + 1, x.size))
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / np.sqrt(rc.mu0))
    out[0] = p
    for k in range(N):
        b_prev = rc.offdiag[k - 1] if k > 0 else 0.0
        p_next = ((x - rc.diag[k]) * p - b_prev * p_prev) / rc.offdiag[k]
        p_prev, p = p, p_next
        out[k + 1] = p
    return out[:, 0] if scalar else out


def eval_weighted(rc: RecurrenceCoeffs, x, N: int) -> np.ndarray:
    """Evaluate q_n(x) = p_n(x) sqrt(w(x)) stably for large n and |x|.

    The sqrt-weight is folded into the recurrence seed in log space and the
    iteration renormalizes whenever magnitudes leave [1e-140, 1e140], so the
    result stays accurate even where p_n overflows and w underflows (Hermite
    up to n ~ 2000, |x| <= 60, and similar for Laguerre).
    """
    if N > rc.length:
        raise ValueError(f"N={N} exceeds stored coefficients (length {rc.length})")
    scalar = np.isscalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    scale = 0.5 * rc.log_weight(x) - 0.5 * log(rc.mu0)
    q_prev = np.zeros_like(x)
    q = np.ones_like(x)
    out = np.empty((N + 1, x.size))
    with np.errstate(over="ignore", under="ignore"):
        out[0] = q * np.exp(scale)
        for k in range(N):
            b_prev = rc.offdiag[k - 1] if k > 0 else 0.0
            q_next = ((x - rc.diag[k]) * q - b_prev * q_prev) / rc.offdiag[k]
            q_prev, q = q, q_next
            mag = np.maximum(np.abs(q), np.abs(q_prev))
            renorm = (mag > 1e140) | ((mag > 0.0) & (mag < 1e-140))
            if renorm.any():
                f = np.where(renorm, mag, 1.0)
                q = q / f
                q_prev = q_prev / f
                scale = scale + np.log(f)
            out[k + 1] = q * np.exp(scale)
    return out[:, 0] if scalar else out


def tridiag_eigenvalues(diag, offdiag, max_sweeps: int = 50) -> np.ndarray:
    """Eigenvalues of a real symmetric tridiagonal matrix, ascending.

    Implicit-shift QL iteration (eigenvalues only), the workhorse of the
    Golub-Welsch construction below.  Robust at desk scale; cost O(n^2).
    """
    d = np.asarray(diag, dtype=float).copy()
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = offdiag
    eps = np.finfo(float).eps
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise NumericalError(
                    f"QL iteration did not converge for eigenvalue {l} "
                    f"after {max_sweeps} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    d.sort()
    return d


def gauss_quadrature(rc: RecurrenceCoeffs, n: int) -> Quadrature:
    """n-point Gauss rule for the family's measure (Golub-Welsch).

    Nodes are the eigenvalues of the leading n-by-n Jacobi matrix; the
    Christoffel weights are recovered from the orthonormal-function sums
    lambda_i = 1 / sum_{k<n} q_k(x_i)^2 with q_k = p_k sqrt(w), a form that
    cannot overflow.  Exact on polynomials of degree <= 2n-1.
    """
    if n < 1:
        raise ValueError("quadrature order must be at least 1")
    if n > rc.length:
        raise ValueError(f"order n={n} exceeds stored coefficients ({rc.length})")
    nodes = tridiag_eigenvalues(rc.diag[:n], rc.offdiag[: n - 1])
    q = eval_weighted(rc, nodes, n - 1)
    weights_over_w = 1.0 / np.sum(q * q, axis=0)
    with np.errstate(under="ignore"):
        weights = weights_over_w * np.exp(rc.log_weight(nodes))
    return Quadrature(nodes, weights, weights_over_w)
