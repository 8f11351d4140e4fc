#!/usr/bin/env python3
"""The gap band as a function of the real parameter n at fixed ball radius.

Three curves organize the lambda axis: the trivial floor n(n-2)/4 (below it,
and at it, nothing), the gap top n(n-2)/4 + L* (dashed), and the first
Dirichlet eigenvalue lambda_1 (solid).  Solutions exist strictly between the
dashed and solid curves; the shaded band between floor and dashed curve is
the solution gap, which narrows as n approaches 4.
"""

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from hypgap import ProblemParams, gap_interval

theta1 = 1.0
ns = np.arange(2.1, 3.951, 0.05)

trivial, gap_top, lam1 = [], [], []
for n in ns:
    g = gap_interval(ProblemParams(float(n), theta1))
    trivial.append(g.lambda_trivial)
    gap_top.append(g.lambda_gap_top)
    lam1.append(g.lambda_one)

fig, ax = plt.subplots(figsize=(7, 5))
ax.fill_between(ns, trivial, gap_top, color="0.8", label="solution gap")
ax.plot(ns, trivial, "k:", label=r"$n(n-2)/4$")
ax.plot(ns, gap_top, "k--", label=r"$n(n-2)/4 + L^*$")
ax.plot(ns, lam1, "k-", label=r"$\lambda_1$")
ax.set_xlabel("n")
ax.set_ylabel(r"$\lambda$")
ax.set_title(rf"existence band, $\theta_1 = {theta1}$")
ax.legend(loc="upper left")
fig.tight_layout()
fig.savefig("band_figure.png", dpi=150)
print("wrote band_figure.png")

# the same data as CSV/SVG comes from the command line:
#   hypgap sweep --theta1 1 --out-csv sweep.csv --out-svg sweep.svg
i3 = int(np.argmin(np.abs(ns - 3.0)))
print(f"band width at n=3: {gap_top[i3] - trivial[i3]:.6f}")
print(f"band width at n=3.9: {gap_top[-2] - trivial[-2]:.6f} (closing toward n=4)")
