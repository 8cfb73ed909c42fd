"""Convergence-study engine: pointwise error curves, decay-rate fits and the
weight-index growth signature, all CSV-ready and deterministic."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .structmat import diff_matrix, op_norm_estimate
from .transforms import CoeffVec, analyze, synthesis
from .tsystems import BasisSpec

__all__ = [
    "ExperimentRecord",
    "RateFit",
    "pointwise_error_curve",
    "pointwise_error_study",
    "mt_rational_rate",
    "fit_decay",
    "index_growth_study",
]

# plot windows: compact domain as-is; [0, 20] covers the Laguerre studies
# (both test functions are below 1e-8 beyond x = 20); symmetric window for
# the real-line bases.
_WINDOWS = {
    "ultraspherical_w": (-1.0, 1.0),
    "laguerre_w": (0.0, 20.0),
    "hermite_fn": (-10.0, 10.0),
    "mt": (-10.0, 10.0),
}


@dataclass(frozen=True)
class ExperimentRecord:
    basis: str
    alpha: float | None
    n: int
    metric: str
    value: float
    x: float | None = None


@dataclass(frozen=True)
class RateFit:
    model: str           # "exponential" (rho^n) or "algebraic" (n^-p)
    param: float         # rho, or the exponent p
    intercept: float
    residual: float      # rms residual of the least-squares fit
    window: tuple
    npoints: int


def pointwise_error_curve(spec: BasisSpec, f, n_terms: int,
                          grid: int = 401, **analyze_kwargs):
    """Absolute error |f - sum of the first n_terms expansion terms| on a
    uniform grid over the basis' plot window."""
    if n_terms < 1:
        raise ValueError("need at least one expansion term")
    N = n_terms - 1
    coeffs = analyze(spec, f, N, **analyze_kwargs)
    lo, hi = _WINDOWS[spec.kind]
    xs = np.linspace(lo, hi, grid)
    approx = synthesis(coeffs, xs).values
    err = np.abs(np.asarray(f(xs), dtype=complex) - approx)
    return xs, err, coeffs


def pointwise_error_study(spec: BasisSpec, f, n_terms: int,
                          grid: int = 401) -> list[ExperimentRecord]:
    """Per-point error records plus the scalar max (metric 'pointwise_max')."""
    if grid < 100:
        raise ValueError("grid must have at least 100 points")
    xs, err, _ = pointwise_error_curve(spec, f, n_terms, grid)
    lo, hi = _WINDOWS[spec.kind]
    tag = f"pointwise@uniform[{lo:g},{hi:g}]x{grid}"
    records = [ExperimentRecord(spec.kind, spec.alpha, n_terms, tag,
                                float(e), x=float(x))
               for x, e in zip(xs, err)]
    records.append(ExperimentRecord(spec.kind, spec.alpha, n_terms,
                                    "pointwise_max", float(err.max())))
    return records


def mt_rational_rate(poles) -> float:
    """Predicted MT coefficient-decay lim sup for a rational function with
    the given poles: sigma_k = (1 - 2 i s_k)/(2 s_k - i), and the rate is
    max(max_{Im s<0} |sigma_k|, max_{Im s>0} 1/|sigma_k|) < 1."""
    poles = np.atleast_1d(np.asarray(poles, dtype=complex))
    if np.any(poles.imag == 0):
        raise ValueError("a real pole means the function cannot be L2(R)")
    sigma = (1.0 - 2j * poles) / (2.0 * poles - 1j)
    lower = np.abs(sigma[poles.imag < 0])
    upper = np.abs(sigma[poles.imag > 0])
    candidates = []
    if lower.size:
        candidates.append(lower.max())
    if upper.size:
        candidates.append((1.0 / upper).max())
    return float(max(candidates))


def fit_decay(coeffs: CoeffVec, model: str, window: tuple) -> RateFit:
    """Least-squares fit of log|c_n| against |n| (exponential) or log|n|
    (algebraic) over the index window; two-sided coefficients are pooled
    by |n|."""
    if model not in ("exponential", "algebraic"):
        raise ValueError(f"unknown decay model {model!r}")
    lo, hi = window
    idx = coeffs.indices
    absn = np.abs(idx)
    mask = (absn >= lo) & (absn <= hi)
    mag = np.abs(coeffs.data[mask])
    absn = absn[mask]
    keep = mag > 0
    mag, absn = mag[keep], absn[keep]
    if mag.size < 5:
        raise ValueError("fit window must contain at least 5 nonzero coefficients")
    y = np.log(mag)
    t = absn.astype(float) if model == "exponential" else np.log(absn.astype(float))
    slope, intercept = np.polyfit(t, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * t + intercept)) ** 2)))
    param = float(np.exp(slope)) if model == "exponential" else float(-slope)
    return RateFit(model, param, float(intercept), resid, (lo, hi), int(mag.size))


def index_growth_study(kind: str, alpha: float | None, powers, sizes,
                       probe: int = 8, iters: int = 200,
                       seed: int = 0) -> list[ExperimentRecord]:
    """Norm estimates of a fixed leading block of D_N^l over a size grid.

    For powers up to the weight index the block entries converge as the
    truncation N is refined (bounded estimates); one power beyond, they
    diverge, which is the observable form of the index.  The probe window
    is kept fixed so the Markov-type growth of whole-section norms does
    not mask the dichotomy.
    """
    spec = BasisSpec(kind, alpha) if alpha is not None else BasisSpec(kind)
    records = []
    for N in sorted(sizes):
        D = diff_matrix(spec, N)
        for ell in sorted(powers):
            est = op_norm_estimate(D, power=ell, iters=iters, seed=seed,
                                   probe=min(probe, N - 1))
            records.append(ExperimentRecord(
                kind, alpha, int(N), f"block_norm_pow{ell}_probe{probe}",
                float(est)))
    return records
