"""Shared oracles for the test suite.

The brute-force constructions here are deliberately independent of the
library code paths they check: recurrence coefficients come from exact
Gram-Schmidt on monomials (sympy rationals and gamma values), derivatives
from finite differences, integrals from quadratures built on the oracle
side.
"""

import numpy as np
import pytest
import sympy as sp


def gram_schmidt_recurrence(moment, n_max):
    """Orthonormal three-term recurrence via exact Gram-Schmidt.

    moment(k) must return the k-th moment of the measure as an exact sympy
    expression.  Returns (diag, offdiag, mu0) as floats, derived purely
    from moment arithmetic (Hankel determinants via explicit
    orthogonalization of monomials).
    """
    npoly = n_max + 2
    # represent polynomials by coefficient lists in the monomial basis
    polys = []  # orthonormal p_0 .. p_{npoly-1}
    for n in range(npoly):
        coeffs = [sp.Integer(0)] * (n + 1)
        coeffs[n] = sp.Integer(1)  # start from x^n
        for p in polys:
            # subtract <x^n, p> p
            inner = sum(c * moment(n + k) for k, c in enumerate(p))
            for k, c in enumerate(p):
                coeffs[k] -= inner * c
        norm2 = sum(ci * cj * moment(i + j)
                    for i, ci in enumerate(coeffs)
                    for j, cj in enumerate(coeffs))
        norm = sp.sqrt(sp.nsimplify(norm2))
        polys.append([sp.simplify(c / norm) for c in coeffs])

    def inner_xp(p, q):
        # <x p, q>
        return sum(ci * cj * moment(i + 1 + j)
                   for i, ci in enumerate(p)
                   for j, cj in enumerate(q))

    diag = np.array([float(sp.N(inner_xp(polys[n], polys[n]), 30))
                     for n in range(n_max + 1)])
    offdiag = np.array([float(sp.N(inner_xp(polys[n], polys[n + 1]), 30))
                        for n in range(n_max)])
    mu0 = float(sp.N(moment(0), 30))
    return diag, offdiag, mu0


@pytest.fixture(scope="session")
def hermite_oracle_rc():
    # weight e^{-x^2} on R: odd moments 0, even are Gamma(k + 1/2)
    def moment(k):
        return sp.Integer(0) if k % 2 else sp.gamma(sp.Rational(k + 1, 2))
    return gram_schmidt_recurrence(moment, 5)


@pytest.fixture(scope="session")
def legendre_oracle_rc():
    def moment(k):
        return sp.Integer(0) if k % 2 else sp.Rational(2, k + 1)
    return gram_schmidt_recurrence(moment, 5)


@pytest.fixture(scope="session")
def laguerre0_oracle_rc():
    def moment(k):
        return sp.factorial(k)
    return gram_schmidt_recurrence(moment, 5)


@pytest.fixture(scope="session")
def jacobi22_oracle_rc():
    # weight (1-x^2)^2 on (-1,1): even moments 2 B((k+1)/2, 3) via gamma
    def moment(k):
        if k % 2:
            return sp.Integer(0)
        return sp.gamma(sp.Rational(k + 1, 2)) * sp.gamma(3) \
            / sp.gamma(sp.Rational(k + 7, 2))
    return gram_schmidt_recurrence(moment, 5)


def fd_derivative(f, x, h=1e-5, order=2):
    """Central finite-difference derivative, 2nd or 6th order."""
    x = np.asarray(x, dtype=float)
    if order == 2:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 6:
        return (-f(x - 3 * h) + 9 * f(x - 2 * h) - 45 * f(x - h)
                + 45 * f(x + h) - 9 * f(x + 2 * h) + f(x + 3 * h)) / (60.0 * h)
    raise ValueError("order must be 2 or 6")
