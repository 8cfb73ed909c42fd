"""The weight index in action: ind w = floor(alpha-1) + 2.

Fixed-window norms of D_N^l converge under truncation refinement for
l <= ind and diverge one power beyond.
"""

import numpy as np

from skewspec import index_growth_study, weight_index

for kind, alpha, powers in (("ultraspherical_w", 2.0, (1, 2, 3, 4)),
                            ("laguerre_w", 4.0, (4, 5, 6))):
    ind = weight_index(kind, alpha)
    print(f"== {kind}, alpha = {alpha}  (ind w = {ind}) ==")
    recs = index_growth_study(kind, alpha, powers=powers, sizes=(32, 64, 128, 256))
    series = {}
    for r in recs:
        series.setdefault(r.metric, []).append((r.n, r.value))
    for metric in sorted(series, key=lambda s: int(s.split("pow")[1].split("_")[0])):
        power = int(metric.split("pow")[1].split("_")[0])
        vals = np.array([v for _, v in sorted(series[metric])])
        ratios = vals[1:] / vals[:-1]
        verdict = "bounded" if power <= ind else "DIVERGES"
        print(f"  l = {power}: ratios per size doubling "
              f"{np.array2string(ratios, precision=3)}   -> {verdict}")
    print()
