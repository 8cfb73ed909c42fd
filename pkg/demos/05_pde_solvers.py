"""Model PDE solves with their geometric guarantees on display."""

import numpy as np

from skewspec import (DiffusionProblem, SchrodingerProblem, hermite_fn_basis,
                      solve_diffusion, solve_schrodinger)

print("== diffusion: u_t = u_xx on [-1,1], u0 = sin(pi x), ultraspherical a=2 ==")
rep = solve_diffusion(DiffusionProblem(N=48, u0=lambda x: np.sin(np.pi * x),
                                       T_final=0.1, steps=10))
print("norm history:", np.array2string(rep.norm_history, precision=6))
print(f"final/initial = {rep.norm_ratio:.8f}   exact e^(-pi^2/10) = {np.exp(-np.pi**2/10):.8f}")
print(f"monotone decay: {bool(np.all(np.diff(rep.norm_history) <= 0))}")

print("\n== Schrodinger: harmonic oscillator ground state, Hermite basis ==")
rep = solve_schrodinger(SchrodingerProblem(
    basis=hermite_fn_basis(), N=32,
    u0=lambda x: np.pi ** -0.25 * np.exp(-x * x / 2),
    T_final=1.0, steps=20, V=lambda x: 0.5 * x * x))
drift = np.abs(rep.norm_history - rep.norm_history[0]).max()
c0 = rep.coeff_history[-1][0]
print(f"norm drift over 20 steps: {drift:.2e}")
print(f"ground-state coefficient at t=1: {c0:.8f}")
print(f"expected phase factor e^(-i/2):  {np.exp(-0.5j):.8f}")
print(f"phase error: {abs(c0 - np.exp(-0.5j)):.2e}")
