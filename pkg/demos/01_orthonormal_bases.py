"""Tour of the four orthonormal bases and their differentiation matrices."""

import numpy as np

from skewspec import (gauss_quadrature, hermite_fn_eval, laguerre_w_diff,
                      laguerre_w_eval, mt_basis, mt_eval, recurrence_coeffs,
                      t_diff_matrix, to_dense, ultra_w_diff, ultra_w_eval)

print("== values at reference points ==")
print(f"MT       phi_0(0)      = {mt_eval(0, 0.0):.6f}   (sqrt(2/pi) = {np.sqrt(2/np.pi):.6f})")
print(f"Hermite  phi_0(0)      = {hermite_fn_eval(0, 0.0):.6f}   (pi^-1/4   = {np.pi**-0.25:.6f})")
print(f"Laguerre phi_0(1), a=2 = {laguerre_w_eval(2.0, 0, 1.0):.6f}   (e^-1/2/sqrt2 = {np.exp(-0.5)/np.sqrt(2):.6f})")
print(f"Ultra    phi_0(0), a=2 = {ultra_w_eval(2.0, 0, 0.0):.6f}   (sqrt(15)/4   = {np.sqrt(15)/4:.6f})")

print("\n== orthonormality by Gauss quadrature (Hermite functions, n <= 6) ==")
rc = recurrence_coeffs("hermite", 16)
q = gauss_quadrature(rc, 14)
from skewspec import hermite_fn_table
tab = hermite_fn_table(6, q.nodes)
lam = 1.0 / np.sum(hermite_fn_table(13, q.nodes) ** 2, axis=0)
gram = (tab * lam) @ tab.T
print(f"max |Gram - I| = {np.abs(gram - np.eye(7)).max():.2e}")

print("\n== differentiation matrices are exactly skew-Hermitian ==")
for label, D in (("MT, N=6", to_dense(t_diff_matrix(mt_basis(), 6))),
                 ("Laguerre a=2, N=8", to_dense(laguerre_w_diff(2.0, 8))),
                 ("Ultraspherical a=2, N=8", to_dense(ultra_w_diff(2.0, 8)))):
    print(f"{label:28s} max |D + D*| = {np.abs(D + D.conj().T).max():.1f}")

print("\nMT diagonal i(2n+1), n = -2..2:",
      np.round(np.diag(to_dense(t_diff_matrix(mt_basis(), 2))).imag, 1))
D = to_dense(ultra_w_diff(2.0, 6))
print("ultraspherical parity mask (zeros on even m+n):")
print(np.round(D[:4, :4], 3))
