"""T-system bases on the real line: Malmquist-Takenaka and Hermite functions.

A T-system is an orthonormal basis of L2(R) whose differentiation matrix is
tridiagonal and skew-Hermitian,

    phi_n' = -b_{n-1} phi_{n-1} + i c_n phi_n + conj(b_n) phi_{n+1}.

The Malmquist-Takenaka (MT) system is complex, indexed over all of Z with
b_n = n + 1 and c_n = 2n + 1 (b_{-1} = 0 falls out of the formula and
decouples the two half-lattices).  Hermite functions are real with c_n = 0;
we keep them real-valued by storing the signed coupling b_n = -sqrt((n+1)/2)
instead of rotating phases to make b_n positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .orthopoly import RecurrenceCoeffs, eval_weighted, recurrence_coeffs

__all__ = [
    "BasisSpec",
    "TridiagonalSkew",
    "mt_basis",
    "hermite_fn_basis",
    "laguerre_w_basis",
    "ultraspherical_w_basis",
    "mt_eval",
    "mt_eval_table",
    "hermite_fn_eval",
    "hermite_fn_table",
    "t_diff_matrix",
]

_KINDS = ("mt", "hermite_fn", "laguerre_w", "ultraspherical_w")


@dataclass(frozen=True)
class BasisSpec:
    """Tagged description of one orthonormal system.

    kind : 'mt' | 'hermite_fn' | 'laguerre_w' | 'ultraspherical_w'
    alpha : weight parameter for the W-systems (None otherwise)

    MT is the only two-sided system (indices in Z); the rest are indexed
    over Z+.  W-system construction requires alpha > -1 and their
    differentiation matrices additionally alpha > 1.
    """

    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.kind in ("laguerre_w", "ultraspherical_w"):
            if self.alpha is None or self.alpha <= -1:
                raise ValueError(f"{self.kind} requires alpha > -1")
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} takes no alpha parameter")

    @property
    def two_sided(self) -> bool:
        return self.kind == "mt"

    @property
    def domain(self) -> tuple[float, float]:
        return {
            "mt": (-np.inf, np.inf),
            "hermite_fn": (-np.inf, np.inf),
            "laguerre_w": (0.0, np.inf),
            "ultraspherical_w": (-1.0, 1.0),
        }[self.kind]

    def n_coeffs(self, N: int) -> int:
        """Length of a truncation with cutoff N (2N+1 two-sided, N+1 else)."""
        return 2 * N + 1 if self.two_sided else N + 1

    def recurrence(self, n_max: int) -> RecurrenceCoeffs:
        """Recurrence of the underlying polynomial family (W-systems and
        Hermite); MT has no polynomial recurrence and raises."""
        if self.kind == "hermite_fn":
            return recurrence_coeffs("hermite", n_max)
        if self.kind == "laguerre_w":
            return recurrence_coeffs("laguerre", n_max, alpha=self.alpha)
        if self.kind == "ultraspherical_w":
            return recurrence_coeffs("jacobi", n_max, alpha=self.alpha, beta=self.alpha)
        raise ValueError("MT has no underlying polynomial recurrence")


def mt_basis() -> BasisSpec:
    return BasisSpec("mt")


def hermite_fn_basis() -> BasisSpec:
    return BasisSpec("hermite_fn")


def laguerre_w_basis(alpha: float) -> BasisSpec:
    return BasisSpec("laguerre_w", float(alpha))


def ultraspherical_w_basis(alpha: float) -> BasisSpec:
    return BasisSpec("ultraspherical_w", float(alpha))


@dataclass(frozen=True)
class TridiagonalSkew:
    """Skew-Hermitian tridiagonal differentiation matrix.

    Realized entries (array position j <-> basis index j + offset):

        D[j, j]     = i c[j]
        D[j, j + 1] = conj(b[j])
        D[j + 1, j] = -b[j]

    so D + D* = 0 holds exactly by construction.
    """

    b: np.ndarray
    c: np.ndarray
    offset: int = 0

    @property
    def size(self) -> int:
        return self.c.size

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.b) or np.any(self.c != 0)

    def transpose(self) -> "TridiagonalSkew":
        # D^T stays in class: b -> -conj(b), c unchanged.
        return TridiagonalSkew(-np.conj(self.b), self.c, self.offset)

    def to_dense(self) -> np.ndarray:
        n = self.size
        dtype = complex if self.is_complex else float
        D = np.zeros((n, n), dtype=dtype)
        idx = np.arange(n)
        if self.is_complex:
            D[idx, idx] = 1j * self.c
        D[idx[:-1], idx[:-1] + 1] = np.conj(self.b)
        D[idx[:-1] + 1, idx[:-1]] = -self.b
        return D


def mt_eval(n: int, x) -> complex | np.ndarray:
    """Malmquist-Takenaka function phi_n(x), n in Z.

    Evaluated via the polar form (1+2ix)/(1-2ix) = exp(2i arctan 2x), so the
    cost is O(1) per point and there is no overflow however large |n| is:

        phi_n(x) = sqrt(2/pi) i^n exp(i (2n+1) arctan 2x) / sqrt(1+4x^2).
    """
    scalar = np.isscalar(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    omega = np.arctan(2.0 * x)
    val = (np.sqrt(2.0 / np.pi) * (1j ** (n % 4))
           * np.exp(1j * (2 * n + 1) * omega) / np.sqrt(1.0 + 4.0 * x * x))
    return val[0] if scalar else val


def mt_eval_table(N: int, x) -> np.ndarray:
    """phi_n(x) for n = -N..N; shape (2N+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    omega = np.arctan(2.0 * x)
    n = np.arange(-N, N + 1)
    phase = np.exp(1j * np.outer(2 * n + 1, omega))
    i_pow = 1j ** (n % 4)
    return np.sqrt(2.0 / np.pi) * i_pow[:, None] * phase / np.sqrt(1.0 + 4.0 * x * x)


def hermite_fn_eval(n: int, x) -> float | np.ndarray:
    """Hermite function phi_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)).

    Computed by the normalized three-term recurrence applied directly to the
    weighted functions (H_n is never formed on its own); accurate up to
    n ~ 2000 and |x| <= 60 thanks to the scaled recurrence underneath.
    """
    return hermite_fn_table(n, x)[n]


def hermite_fn_table(N: int, x) -> np.ndarray:
    """phi_0(x)..phi_N(x); shape (N+1,) for scalar x else (N+1, len(x))."""
    rc = recurrence_coeffs("hermite", max(N, 1))
    return eval_weighted(rc, x, N)


def t_diff_matrix(spec: BasisSpec, N: int) -> TridiagonalSkew:
    """Tridiagonal skew-Hermitian differentiation matrix of a T-system.

    MT: indices -N..N with b_n = n+1, c_n = 2n+1 (the n = -1 coupling is
    zero, so the two half-lattices decouple).  Hermite: indices 0..N with
    zero diagonal and real signed coupling D[n, n+1] = -sqrt((n+1)/2).
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if spec.kind == "mt":
        n = np.arange(-N, N, dtype=float)      # coupling indices -N..N-1
        b = (n + 1.0).astype(complex)
        c = 2.0 * np.arange(-N, N + 1, dtype=float) + 1.0
        return TridiagonalSkew(b, c, offset=-N)
    if spec.kind == "hermite_fn":
        n = np.arange(N, dtype=float)
        b = -np.sqrt((n + 1.0) / 2.0)
        return TridiagonalSkew(b, np.zeros(N + 1), offset=0)
    raise ValueError(f"t_diff_matrix needs a T-system (mt or hermite_fn), got {spec.kind!r}")
