"""The fundamental map: function -> expansion coefficients, and back.

All transforms are unitary in the L2 sense, so the coefficient 2-norm of a
CoeffVec is directly the L2-norm approximation of the represented function
(Plancherel).  The MT transform samples on the open theta-grid
theta_j = -pi + (2j+1) pi / M (the substitution x = tan(theta/2)/2 is
singular at the endpoint) and reduces to one FFT; the other bases use
Gauss quadrature of the matching family with the sqrt-weight regrouped
onto the basis functions, which keeps every factor finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .orthopoly import gauss_quadrature
from .tsystems import BasisSpec, hermite_fn_table, mt_eval_table
from .wsystems import laguerre_w_table, ultra_w_table

__all__ = [
    "CoeffVec",
    "GridSamples",
    "dft_unitary",
    "basis_table",
    "mt_analysis",
    "quad_analysis",
    "analyze",
    "synthesis",
    "parseval_norm",
]


@dataclass(frozen=True)
class CoeffVec:
    """Truncated expansion coefficients with their basis tag.

    ``data[j]`` is the coefficient of phi_{j + offset}; offset is -N for
    the two-sided MT system and 0 otherwise.  ``warnings`` carries
    non-fatal diagnostics (e.g. the MT aliasing check).
    """

    spec: BasisSpec
    data: np.ndarray = field(repr=False)
    offset: int = 0
    warnings: tuple = ()

    def __post_init__(self):
        if self.spec.two_sided:
            if self.offset != -(self.data.size - 1) // 2 or self.data.size % 2 == 0:
                raise ValueError("MT coefficients must be a symmetric two-sided range")
        elif self.offset != 0:
            raise ValueError("one-sided bases use offset 0")

    @property
    def cutoff(self) -> int:
        return (self.data.size - 1) // 2 if self.spec.two_sided else self.data.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.data.size) + self.offset

    def __getitem__(self, n: int):
        return self.data[n - self.offset]


@dataclass(frozen=True)
class GridSamples:
    points: np.ndarray
    values: np.ndarray


def dft_unitary(z, direction: str = "forward") -> np.ndarray:
    """Unitary radix-2 DFT (inverse o forward = identity to 1e-13)."""
    z = np.asarray(z)
    n = z.shape[-1]
    if n == 0 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    if direction == "forward":
        return np.fft.fft(z, norm="ortho")
    if direction == "inverse":
        return np.fft.ifft(z, norm="ortho")
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def basis_table(spec: BasisSpec, N: int, x) -> np.ndarray:
    """Stable evaluation of all basis functions up to cutoff N at points x.

    MT: rows n = -N..N (complex); others: rows 0..N (real).
    """
    if spec.kind == "mt":
        return mt_eval_table(N, x)
    if spec.kind == "hermite_fn":
        return hermite_fn_table(N, x)
    if spec.kind == "laguerre_w":
        return laguerre_w_table(spec.alpha, N, x)
    return ultra_w_table(spec.alpha, N, x)


def _next_pow2(n: int) -> int:
    return 1 << (int(n) - 1).bit_length()


def mt_analysis(f, N: int, M: int | None = None) -> CoeffVec:
    """MT coefficients hat f_n = int f conj(phi_n) dx for |n| <= N, by FFT.

    Substituting x = tan(theta/2)/2 turns the integrals into Fourier
    coefficients of g(theta) = (1 - i tan(theta/2)) f(tan(theta/2)/2),
    sampled at M uniform open-grid points (M a power of two, default the
    next power of two >= 4(2N+1)).  f must decay at +-inf; if |g| near the
    grid ends exceeds 1e-8 max|g| an aliasing warning is attached.
    """
    if M is None:
        M = _next_pow2(4 * (2 * N + 1))
    if M & (M - 1) or M < 4 * (2 * N + 1):
        raise ValueError("M must be a power of two with M >= 4(2N+1)")
    j = np.arange(M)
    theta = -np.pi + (2.0 * j + 1.0) * np.pi / M
    t = np.tan(theta / 2.0)
    g = (1.0 - 1j * t) * np.asarray(f(t / 2.0), dtype=complex)
    if not np.all(np.isfinite(g)):
        raise ValueError("f evaluated non-finite on the MT theta-grid")
    G = dft_unitary(g, "forward")
    n = np.arange(-N, N + 1)
    coeff = ((1j ** (n % 4)) * np.exp(-1j * n * np.pi / M)
             * np.sqrt(np.pi / (2.0 * M)) * G[n % M])
    warnings = ()
    gmax = np.abs(g).max()
    # decay requirement g(+-pi) = 0, probed at the endpoint limit t -> inf
    t_end = 1e12
    with np.errstate(over="ignore", invalid="ignore"):
        g_end = np.abs((1.0 - 1j * np.array([-t_end, t_end]))
                       * np.asarray(f(np.array([-t_end, t_end]) / 2.0)))
    g_end = np.where(np.isfinite(g_end), g_end, np.inf)
    if gmax > 0 and g_end.max() > 1e-8 * gmax:
        warnings = ("aliasing: f does not decay at +-infinity; "
                    "coefficients may be contaminated",)
    return CoeffVec(BasisSpec("mt"), coeff, offset=-N, warnings=warnings)


def quad_analysis(spec: BasisSpec, f, N: int, Q: int | None = None) -> CoeffVec:
    """Coefficients <f, phi_n>, n = 0..N, by Q-point Gauss quadrature of the
    matching polynomial family (default Q = 2N).

    The integrand f phi_n dx is evaluated as f * (p_n sqrt w) against the
    w-free Christoffel weights, i.e. expanding f/sqrt(w) in orthogonal
    polynomials without ever forming either singular factor; exact to
    quadrature precision when f/sqrt(w) is a polynomial of degree
    <= 2Q - 1 - N.
    """
    if spec.kind == "mt":
        raise ValueError("use mt_analysis for the MT system")
    if Q is None:
        Q = max(2 * N, N + 1)
    if Q < N + 1:
        raise ValueError("need Q >= N + 1 quadrature points")
    rc = spec.recurrence(Q + 1)
    rule = gauss_quadrature(rc, Q)
    table = basis_table(spec, Q - 1, rule.nodes)
    lam = 1.0 / np.sum(table * table, axis=0)  # Christoffel / w, underflow-free
    fx = np.asarray(f(rule.nodes))
    bad = ~np.isfinite(fx)
    if bad.any():
        i = int(np.argmax(bad))
        raise ValueError(f"f evaluated non-finite at quadrature node "
                         f"{i} (x = {rule.nodes[i]!r})")
    coeff = table[: N + 1] @ (lam * fx)
    return CoeffVec(spec, coeff.astype(complex), offset=0)


def analyze(spec: BasisSpec, f, N: int, **kwargs) -> CoeffVec:
    """Fundamental map F_N: dispatch to the FFT or quadrature transform."""
    if spec.kind == "mt":
        return mt_analysis(f, N, **kwargs)
    return quad_analysis(spec, f, N, **kwargs)


def synthesis(c: CoeffVec, points) -> GridSamples:
    """Pointwise sums sum_n c_n phi_n(x) with the stable evaluators."""
    points = np.atleast_1d(np.asarray(points, dtype=float))
    lo, hi = c.spec.domain
    if np.any(points < lo) or np.any(points > hi):
        raise ValueError(f"points outside basis domain [{lo}, {hi}]")
    table = basis_table(c.spec, c.cutoff, points)
    values = c.data @ table
    return GridSamples(points, values)


def parseval_norm(c: CoeffVec) -> float:
    """Coefficient 2-norm = L2-norm approximation of the function."""
    return float(np.linalg.norm(c.data))
