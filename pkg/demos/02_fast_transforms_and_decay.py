"""The fundamental map: FFT-based MT analysis, Parseval, and decay rates."""

import numpy as np

from skewspec import fit_decay, mt_analysis, mt_rational_rate, parseval_norm, synthesis

runge = lambda x: 1.0 / (1.0 + x * x)

print("== MT analysis of 1/(1+x^2) (poles at +-i) ==")
c = mt_analysis(runge, 48)
print(f"Parseval norm  = {parseval_norm(c):.10f}    exact sqrt(pi/2) = {np.sqrt(np.pi/2):.10f}")
xs = np.linspace(-6, 6, 9)
vals = synthesis(c, xs).values
print(f"max synthesis error on [-6,6]: {np.abs(vals - runge(xs)).max():.2e}")

fit = fit_decay(c, "exponential", (4, 28))
print(f"fitted decay ratio rho = {fit.param:.6f}   predicted 1/3 = {1/3:.6f}")
print(f"prediction from the pole map: {mt_rational_rate([1j, -1j]):.6f}")

print("\n== 1/(1+x+x^2): exponential, rate 0.4260 ==")
c = mt_analysis(lambda x: 1.0 / (1.0 + x + x * x), 64)
fit = fit_decay(c, "exponential", (8, 48))
pred = mt_rational_rate([-0.5 - 0.5j * np.sqrt(3), -0.5 + 0.5j * np.sqrt(3)])
print(f"fitted rho = {fit.param:.4f}   pole-map prediction = {pred:.4f}")

print("\n== cos x/(1+x+x^2): the essential singularity at infinity ruins it ==")
c = mt_analysis(lambda x: np.cos(x) / (1.0 + x + x * x), 4096)
fit = fit_decay(c, "algebraic", (64, 3500))
print(f"fitted algebraic exponent p = {fit.param:.3f}   (down to ~|n|^-4/3 = {4/3:.3f})")
