"""Matrix functions f(tD)x: Krylov projection and the resolvent contour route.

Both methods only touch D through matvecs/solves, so they compose with the
structured algebra: Krylov costs O(m) products for an m-dimensional
projection (three-term Lanczos when the operator is skew-Hermitian or
Hermitian), the contour route costs one structured solve per quadrature
node and its trapezoidal error decays exponentially in the node count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .structmat import DiffMatrix, SingularMatrixError, op_norm_estimate, shift_solve

__all__ = [
    "KrylovOptions",
    "KrylovInfo",
    "ContourSpec",
    "ContourError",
    "krylov_apply",
    "dunford_apply",
    "enclosing_contour",
]


class ContourError(RuntimeError):
    """A contour-node resolvent solve failed (contour too close to the spectrum)."""


@dataclass(frozen=True)
class KrylovOptions:
    max_dim: int = 80
    tolerance: float = 1e-12

    def __post_init__(self):
        if self.max_dim < 2:
            raise ValueError("max_dim must be at least 2")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class KrylovInfo:
    dim: int
    converged: bool
    breakdown: bool
    error_estimate: float


@dataclass(frozen=True)
class ContourSpec:
    """Circular contour enclosing the spectrum, discretized at roots of unity."""

    center: complex
    radius: float
    nodes: int = 128

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        n = self.nodes
        if n < 2 or n & (n - 1):
            raise ValueError("node count must be a power of two (>= 2)")

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        theta = 2.0 * np.pi * np.arange(self.nodes) / self.nodes
        unit = np.exp(1j * theta)
        return self.center + self.radius * unit, unit


def _small_exp_column(structure: str, t: complex, H: np.ndarray) -> np.ndarray:
    """First column of the projected exponential e^{t A_m} e_1."""
    m = H.shape[0]
    e1 = np.zeros(m)
    e1[0] = 1.0
    if structure == "general":
        return scipy.linalg.expm(t * H) @ e1
    # Hermitian projections diagonalize; A = iH for the skew rotation
    lam, U = np.linalg.eigh(H)
    factor = 1j * t if structure == "skew_hermitian" else t
    return U @ (np.exp(factor * lam) * (U.conj().T @ e1))


def krylov_apply(apply_a, t: complex, x, opts: KrylovOptions | None = None,
                 structure: str = "general", return_info: bool = False):
    """Approximate e^{tA} x from the Krylov subspace of A at x.

    ``structure`` selects the projection: ``skew_hermitian`` runs the
    Lanczos three-term recurrence on the rotation H = -iA (A = iH with H
    Hermitian), ``hermitian`` runs it on A directly, ``general`` falls back
    to Arnoldi.  The basis is kept fully reorthogonalized (cheap at desk
    scale, and it preserves the unitarity of the projected evolution).
    Iteration stops when the residual indicator beta_m |[e^{tH_m}]_{m,1}|
    drops below the tolerance, on lucky breakdown (the subspace is
    invariant, the result exact), or at max_dim (flagged in the info).
    """
    if structure not in ("general", "hermitian", "skew_hermitian"):
        raise ValueError(f"unknown structure {structure!r}")
    opts = opts or KrylovOptions()
    x = np.asarray(x)
    beta0 = np.linalg.norm(x)
    if beta0 == 0:
        raise ValueError("krylov_apply needs a nonzero vector")

    if structure == "skew_hermitian":
        def op(v):
            return -1j * np.asarray(apply_a(v))
    else:
        def op(v):
            return np.asarray(apply_a(v))

    lanczos = structure in ("hermitian", "skew_hermitian")
    n = x.size
    m_max = min(opts.max_dim, n)
    V = np.zeros((m_max, n), dtype=complex)
    V[0] = x / beta0
    H = np.zeros((m_max, m_max), dtype=float if lanczos else complex)
    breakdown = False
    converged = False
    err = np.inf
    u = np.ones(1)
    m = 1
    for j in range(m_max):
        w = op(V[j]).astype(complex)
        if lanczos:
            if j > 0:
                w = w - H[j, j - 1] * V[j - 1]
            alpha = np.real(np.vdot(V[j], w))
            w = w - alpha * V[j]
            H[j, j] = alpha
        else:
            for i in range(j + 1):
                hij = np.vdot(V[i], w)
                H[i, j] = hij
                w = w - hij * V[i]
        # full reorthogonalization pass
        overlaps = V[: j + 1].conj() @ w
        w = w - overlaps @ V[: j + 1]
        beta = float(np.linalg.norm(w))
        m = j + 1
        u = _small_exp_column(structure, t, H[:m, :m])
        if beta <= 1e-14 * beta0:
            breakdown = True
            converged = True
            err = 0.0
            break
        err = float(beta * abs(u[-1]) * beta0)
        if err <= opts.tolerance * beta0 or j + 1 == m_max:
            converged = err <= opts.tolerance * beta0
            break
        H[j + 1, j] = beta
        if lanczos:
            H[j, j + 1] = beta
        V[j + 1] = w / beta

    y = beta0 * (u.astype(complex) @ V[:m])
    info = KrylovInfo(dim=m, converged=converged, breakdown=breakdown,
                      error_estimate=err)
    return (y, info) if return_info else y


def enclosing_contour(D: DiffMatrix, safety: float = 1.25,
                      nodes: int = 128, scale: complex = 1.0) -> ContourSpec:
    """Circle centered at 0 with radius safety * ||scale D|| estimate.

    For skew-Hermitian D the spectrum is imaginary within +-||D||, so any
    safety factor > 1 encloses it.
    """
    rho = op_norm_estimate(D, power=1, iters=200)
    return ContourSpec(0.0, safety * abs(scale) * rho, nodes)


def dunford_apply(f, T: DiffMatrix, x, contour: ContourSpec,
                  solver=None) -> np.ndarray:
    """f(T) x by the trapezoidal resolvent contour quadrature

        f(T) = (1/2 pi i) oint f(z) (z I - T)^{-1} dz

    discretized at the contour's roots-of-unity parameter points; each node
    costs one structured solve (z I - T) w = x.  The quadrature error
    decays exponentially in the node count as long as the contour stays
    clear of the spectrum.
    """
    x = np.asarray(x, dtype=complex)
    zs, units = contour.points()
    acc = np.zeros_like(x)
    for z, unit in zip(zs, units):
        try:
            if solver is not None:
                w = solver(z, x)
            else:
                w = shift_solve(T, z, 1.0, x)
        except SingularMatrixError as exc:
            raise ContourError(
                f"resolvent solve failed at z = {z:.3g}; the contour is too "
                f"close to the spectrum, increase the radius") from exc
        acc += f(z) * unit * w
    return (contour.radius / contour.nodes) * acc
