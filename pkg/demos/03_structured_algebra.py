"""O(N) semiseparable algebra: matvec, shifted solves, runtime scaling."""

import time

import numpy as np

from skewspec import laguerre_w_diff, matvec, semisep_solve, to_dense, ultra_w_diff

rng = np.random.default_rng(0)

print("== fast matvec vs dense realization (N = 256) ==")
for label, D in (("Laguerre a=2", laguerre_w_diff(2.0, 256)),
                 ("Ultraspherical a=4 (parity)", ultra_w_diff(4.0, 256))):
    x = rng.standard_normal(257)
    err = np.linalg.norm(matvec(D, x) - to_dense(D) @ x) / np.linalg.norm(x)
    print(f"{label:30s} relative error {err:.2e}")

print("\n== quasiseparable solve (I - kappa D) y = x, N = 512 ==")
D = laguerre_w_diff(2.0, 512)
x = rng.standard_normal(513)
for kappa in (0.2, 0.05 + 0.3j):
    y = semisep_solve(D, kappa, x)
    r = np.linalg.norm(y - kappa * matvec(D, y) - x) / np.linalg.norm(x)
    print(f"kappa = {kappa}: relative residual {r:.2e}")

print("\n== runtime scales linearly ==")
for n in (2 ** 12, 2 ** 14, 2 ** 16):
    D = laguerre_w_diff(2.0, n - 1)
    x = rng.standard_normal(n)
    matvec(D, x)
    reps = max(3, (1 << 18) // n)
    t0 = time.perf_counter()
    for _ in range(reps):
        matvec(D, x)
    dt = (time.perf_counter() - t0) / reps
    print(f"N = {n:6d}: {1e6 * dt:8.1f} us per product  ({1e9 * dt / n:.2f} ns per entry)")
