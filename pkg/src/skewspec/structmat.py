"""Structured linear algebra for differentiation matrices.

Matrix-vector products cost O(K) through prefix/suffix recurrences on the
semiseparable generators (two independent accumulator pairs when a parity
mask is present); shifted systems (z I - s D) y = x are solved in O(N) by
banded elimination (tridiagonal) or a generator-based quasiseparable
elimination sweep (semiseparable) with an automatic dense-LU fallback.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from .tsystems import BasisSpec, TridiagonalSkew, t_diff_matrix
from .wsystems import SemiseparableRank1, w_diff_matrix

__all__ = [
    "DiffMatrix",
    "SingularMatrixError",
    "diff_matrix",
    "to_dense",
    "matvec",
    "tridiag_solve",
    "semisep_solve",
    "shift_solve",
    "op_norm_estimate",
]

DiffMatrix = TridiagonalSkew | SemiseparableRank1 | np.ndarray

_DENSE_FALLBACK_SIZE = 64
_LONGDOUBLE_MATVEC_MAX = 768


class SingularMatrixError(RuntimeError):
    """The shifted system is numerically singular."""


def diff_matrix(spec: BasisSpec, N: int) -> DiffMatrix:
    """Differentiation matrix of any supported basis, cutoff N."""
    if spec.kind in ("mt", "hermite_fn"):
        return t_diff_matrix(spec, N)
    return w_diff_matrix(spec, N)


def to_dense(D: DiffMatrix) -> np.ndarray:
    if isinstance(D, np.ndarray):
        return D
    return D.to_dense()


def _size(D: DiffMatrix) -> int:
    return D.shape[0] if isinstance(D, np.ndarray) else D.size


def _out_window(D: DiffMatrix, n_out: int | None, size: int) -> slice:
    """Index window of the truncated output: leading block for one-sided
    systems, centered block for two-sided (MT) ones."""
    if n_out is None:
        return slice(0, size)
    offset = getattr(D, "offset", 0)
    if offset < 0:  # two-sided, positions 0..2K correspond to -K..K
        K = -offset
        if n_out > K:
            raise ValueError(f"output cutoff {n_out} exceeds stored range {K}")
        return slice(K - n_out, K + n_out + 1)
    if n_out + 1 > size:
        raise ValueError(f"output cutoff {n_out} exceeds stored range {size - 1}")
    return slice(0, n_out + 1)


def matvec(D: DiffMatrix, x, n_out: int | None = None) -> np.ndarray:
    """y = D x, optionally truncated to the cutoff ``n_out``.

    ``x`` must cover D's full stored index range (the rectangular
    application y_m = sum_{n<=K} D_{m,n} x_n with K >= N); cost is linear
    in len(x).
    """
    x = np.asarray(x)
    n = _size(D)
    if x.shape != (n,):
        raise ValueError(f"x has shape {x.shape}, expected ({n},)")
    window = _out_window(D, n_out, n)

    if isinstance(D, np.ndarray):
        return (D @ x)[window]

    if isinstance(D, TridiagonalSkew):
        dtype = complex if (D.is_complex or np.iscomplexobj(x)) else float
        y = np.zeros(n, dtype=dtype)
        if D.is_complex:
            y += 1j * D.c * x
        y[:-1] += np.conj(D.b) * x[1:]
        y[1:] += -D.b * x[:-1]
        return y[window]

    # generators span a large dynamic range (a -> 0, b -> inf), so the
    # prefix sums amplify roundoff; extended-precision accumulation keeps
    # the O(K) form while matching the dense product to ~1e-14.  Above the
    # cache-resident scale extended precision costs a super-linear cliff,
    # and no tolerance binds there, so large sections stay in float64.
    extended = n <= _LONGDOUBLE_MATVEC_MAX
    if extended:
        work = np.clongdouble if np.iscomplexobj(x) else np.longdouble
    else:
        work = complex if np.iscomplexobj(x) else float
    gen_dtype = np.longdouble if extended else float
    a = D.gen_a.astype(gen_dtype)
    b = D.gen_b.astype(gen_dtype)
    lc = D.lower_coeff
    xw = x.astype(work)
    ax = a * xw
    bx = b * xw
    out_dtype = complex if np.iscomplexobj(x) else float
    zero = work(0.0)
    if not D.parity_masked:
        sigma = np.concatenate(([zero], np.cumsum(bx)[:-1]))
        rho = np.sum(ax) - np.cumsum(ax)
        return (lc * (a * sigma - b * rho)).astype(out_dtype)[window]
    # parity mask: row m couples only to opposite-parity columns
    m = np.arange(n)
    even = (m % 2 == 0)
    sig_e = np.concatenate(([zero], np.cumsum(np.where(even, bx, zero))[:-1]))
    sig_o = np.concatenate(([zero], np.cumsum(np.where(~even, bx, zero))[:-1]))
    ax_e = np.where(even, ax, zero)
    ax_o = np.where(~even, ax, zero)
    rho_e = np.sum(ax_e) - np.cumsum(ax_e)
    rho_o = np.sum(ax_o) - np.cumsum(ax_o)
    sigma = np.where(even, sig_o, sig_e)
    rho = np.where(even, rho_o, rho_e)
    return (lc * (a * sigma - b * rho)).astype(out_dtype)[window]


def _tridiag_shift_solve(D: TridiagonalSkew, z: complex, s: complex, x) -> np.ndarray:
    n = D.size
    ab = np.zeros((3, n), dtype=complex)
    ab[1, :] = z - s * 1j * D.c
    ab[0, 1:] = -s * np.conj(D.b)
    ab[2, :-1] = s * D.b
    try:
        return solve_banded((1, 1), ab, np.asarray(x, dtype=complex))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise SingularMatrixError(str(exc)) from exc


def _semisep_generators(D: SemiseparableRank1, s: complex):
    """Quasiseparable generators of z I - s D (diagonal handled separately):
    lower entry P_m . Q_n, upper entry G_m . H_n."""
    a = D.gen_a
    b = D.gen_b
    gamma = -s * D.lower_coeff
    n = D.size
    if not D.parity_masked:
        P = (gamma * a)[:, None].astype(complex)
        Q = b[:, None].astype(complex)
        G = (-gamma * b)[:, None].astype(complex)
        H = a[:, None].astype(complex)
        return P, Q, G, H
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    P = np.stack([0.5 * gamma * a, -0.5 * gamma * a * sign], axis=1).astype(complex)
    Q = np.stack([b, b * sign], axis=1).astype(complex)
    G = np.stack([-0.5 * gamma * b, 0.5 * gamma * b * sign], axis=1).astype(complex)
    H = np.stack([a, a * sign], axis=1).astype(complex)
    return P, Q, G, H


def _semisep_sweep(D: SemiseparableRank1, z: complex, s: complex, x) -> np.ndarray:
    """O(N) quasiseparable LU sweep for (z I - s D) y = x.

    Forward pass eliminates unknowns in order, carrying an r x r coupling
    matrix and the reduced RHS prefix; backward pass resolves against the
    remaining upper generators.  No pivoting: a vanishing reduced pivot
    raises and the caller falls back to dense LU.
    """
    P, Q, G, H = _semisep_generators(D, s)
    n, r = P.shape
    x = np.asarray(x, dtype=complex)
    B = np.zeros((r, r), dtype=complex)
    xi = np.zeros(r, dtype=complex)
    piv = np.empty(n, dtype=complex)
    Gp = np.empty((n, r), dtype=complex)
    xp = np.empty(n, dtype=complex)
    for k in range(n):
        Hk = H[k]
        Pk = P[k]
        BH = B @ Hk
        Qk = Q[k] - BH
        Gk = G[k] - B.T @ Pk
        dk = z - Pk @ BH
        if abs(dk) < 1e-300:
            raise SingularMatrixError(f"vanishing pivot at index {k}")
        xk = x[k] - Pk @ xi
        piv[k] = dk
        Gp[k] = Gk
        xp[k] = xk
        B = B + np.outer(Qk, Gk) / dk
        xi = xi + Qk * (xk / dk)
    y = np.empty(n, dtype=complex)
    tau = np.zeros(r, dtype=complex)
    for k in range(n - 1, -1, -1):
        y[k] = (xp[k] - Gp[k] @ tau) / piv[k]
        tau = tau + H[k] * y[k]
    return y


def _dense_shift_solve(D: DiffMatrix, z: complex, s: complex, x) -> np.ndarray:
    n = _size(D)
    A = z * np.eye(n, dtype=complex) - s * to_dense(D)
    try:
        return np.linalg.solve(A, np.asarray(x, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from exc


def shift_solve(D: DiffMatrix, z: complex, s: complex, x,
                rtol: float = 1e-10) -> np.ndarray:
    """Solve (z I - s D) y = x with the structure-appropriate O(N) path.

    The semiseparable sweep is residual-checked against ``rtol``; on
    instability (or for sizes <= 64, where dense LU is at least as fast)
    the dense path is used.  Raises SingularMatrixError if no path attains
    the residual.
    """
    x = np.asarray(x)
    if isinstance(D, TridiagonalSkew):
        return _tridiag_shift_solve(D, z, s, x)
    if isinstance(D, np.ndarray):
        return _dense_shift_solve(D, z, s, x)
    xnorm = np.linalg.norm(x)
    if xnorm == 0.0:
        return np.zeros(D.size, dtype=complex)
    if D.size > _DENSE_FALLBACK_SIZE:
        try:
            y = _semisep_sweep(D, z, s, x)
        except SingularMatrixError:
            y = None
        if y is not None:
            resid = np.linalg.norm(z * y - s * matvec(D, y) - x)
            if resid <= rtol * xnorm:
                return y
    y = _dense_shift_solve(D, z, s, x)
    resid = np.linalg.norm(z * y - s * matvec(D, y) - x)
    if resid > max(rtol, 1e-8) * xnorm:
        raise SingularMatrixError(
            f"dense fallback residual {resid / xnorm:.2e} above tolerance")
    return y


def _real_if_real_data(y: np.ndarray, D: DiffMatrix, kappa: complex, x) -> np.ndarray:
    dense_complex = isinstance(D, np.ndarray) and np.iscomplexobj(D)
    struct_complex = isinstance(D, TridiagonalSkew) and D.is_complex
    if np.iscomplexobj(x) or np.imag(kappa) != 0 or dense_complex or struct_complex:
        return y
    return y.real


def tridiag_solve(D: TridiagonalSkew, kappa: complex, x) -> np.ndarray:
    """Solve (I - kappa D) y = x for a tridiagonal skew-Hermitian D."""
    if kappa == 0:
        return np.array(x, copy=True)
    return _real_if_real_data(_tridiag_shift_solve(D, 1.0, kappa, x), D, kappa, x)


def semisep_solve(D: SemiseparableRank1, kappa: complex, x,
                  rtol: float = 1e-10) -> np.ndarray:
    """Solve (I - kappa D) y = x for a rank-1 semiseparable skew D."""
    if kappa == 0:
        return np.array(x, copy=True)
    return _real_if_real_data(shift_solve(D, 1.0, kappa, x, rtol=rtol), D, kappa, x)


def op_norm_estimate(D: DiffMatrix, power: int = 1, iters: int = 100,
                     seed: int = 0, probe: int | None = None,
                     rtol: float = 1e-6, return_info: bool = False):
    """Power-iteration estimate of the spectral norm of D^power.

    With ``probe`` set, estimates the norm of the leading (probe+1)-square
    block of D^power instead: the fixed observation window is what exposes
    the weight-index dichotomy (block entries converge under truncation
    refinement for powers up to ind w and diverge beyond it), whereas
    whole-section norms grow like the Markov bound for every power.

    Uses only matvec applications of D.  Returns the estimate, or
    ``(estimate, converged)`` when ``return_info`` is true.
    """
    if power < 1:
        raise ValueError("power must be at least 1")
    n = _size(D)
    p = n if probe is None else probe + 1
    if p > n:
        raise ValueError("probe window exceeds matrix size")
    is_c = isinstance(D, np.ndarray) and np.iscomplexobj(D) or \
        (isinstance(D, TridiagonalSkew) and D.is_complex)
    sign = -1.0 if power % 2 else 1.0  # (D^l)^* = (-1)^l D^l for skew D

    def apply_block(v):
        w = np.zeros(n, dtype=complex if is_c else float)
        w[:p] = v
        for _ in range(power):
            w = matvec(D, w)
        return w[:p]

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(p)
    if is_c:
        v = v + 1j * rng.standard_normal(p)
    v = v / np.linalg.norm(v)
    lam_prev = np.inf
    converged = False
    lam = 0.0
    for _ in range(iters):
        w = sign * apply_block(apply_block(v))  # w = (B* B) v, PSD
        lam = float(np.real(np.vdot(v, w)))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            lam = 0.0
            converged = True
            break
        v = w / nw
        if abs(lam - lam_prev) <= rtol * max(abs(lam), 1e-300):
            converged = True
            break
        lam_prev = lam
    est = float(np.sqrt(max(lam, 0.0)))
    return (est, converged) if return_info else est
