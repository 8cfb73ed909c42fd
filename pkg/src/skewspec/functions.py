"""Registry of named test functions for the CLI and convergence studies.

A fixed registry instead of a runtime expression parser: the studies only
need this handful of functions, and golden CSV tests need stable names.
Names of the form ``phi<k>`` resolve to the k-th basis function of whatever
basis the caller selected.
"""

from __future__ import annotations

import re

import numpy as np

from .transforms import basis_table
from .tsystems import BasisSpec

__all__ = ["FUNCTION_REGISTRY", "UnknownFunctionError", "resolve_function"]


class UnknownFunctionError(KeyError):
    """Requested name is not in the registry."""


FUNCTION_REGISTRY = {
    "sin_pi_x": (lambda x: np.sin(np.pi * x),
                 "sin(pi x); vanishes once at x = -1, 1"),
    "cos2_half_pi_x": (lambda x: np.cos(np.pi * x / 2.0) ** 2,
                       "cos^2(pi x / 2); vanishes twice at x = -1, 1"),
    "runge1": (lambda x: 1.0 / (1.0 + x * x),
               "1/(1+x^2); poles at +-i"),
    "rational1": (lambda x: 1.0 / (1.0 + x + x * x),
                  "1/(1+x+x^2); poles at -1/2 +- i sqrt(3)/2"),
    "cos_rational1": (lambda x: np.cos(x) / (1.0 + x + x * x),
                      "cos x/(1+x+x^2); essential singularity at infinity"),
    "xexp_ratio": (lambda x: x * np.exp(-x) / (1.0 + x),
                   "x e^{-x}/(1+x); f(0) = 0, f'(0) != 0"),
    "xexp_sin": (lambda x: x * np.exp(-2.0 * x) * np.sin(x),
                 "x e^{-2x} sin x; f(0) = f'(0) = 0"),
    "gaussian": (lambda x: np.exp(-x * x / 2.0),
                 "e^{-x^2/2} (ground-state shape)"),
    "sech": (lambda x: 1.0 / np.cosh(x),
             "sech x; smooth, exponentially decaying"),
}

_PHI_RE = re.compile(r"^phi(-?\d+)$")


def resolve_function(name: str, spec: BasisSpec | None = None):
    """Look up a named function; ``phi<k>`` needs the basis spec."""
    m = _PHI_RE.match(name)
    if m:
        if spec is None:
            raise UnknownFunctionError("phi<k> names need a basis")
        k = int(m.group(1))
        if k < 0 and not spec.two_sided:
            raise UnknownFunctionError(f"{name}: negative index in a one-sided basis")

        def phi_k(x):
            cut = abs(k)
            table = basis_table(spec, max(cut, 1), x)
            row = k + cut if spec.two_sided else k
            return table[row]

        return phi_k
    try:
        return FUNCTION_REGISTRY[name][0]
    except KeyError:
        known = ", ".join(sorted(FUNCTION_REGISTRY)) + ", phi<k>"
        raise UnknownFunctionError(
            f"unknown function {name!r}; available: {known}") from None
