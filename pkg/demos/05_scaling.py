"""Fitting time-to-solve power laws.

Times simulated annealing end to end for l_grid = 2, 3, 4, fits
time ~ V^slope on log-log axes, and then shows where two reference fits
would cross.

    python demos/05_scaling.py
"""

from dataclasses import replace

import numpy as np

from wflo.harness import ExperimentConfig, fit_scaling, scaling_intersection
from wflo.harness.experiment import time_solve

base = ExperimentConfig(method="sa", m=2, sa_sweeps=300)
points = []
for l in (2, 3, 4):
    seconds = np.mean([time_solve(replace(base, l_grid=l), seed=s) for s in range(3)])
    points.append((l * l, seconds))
    print(f"V = {l * l:2d}: {seconds * 1e3:7.2f} ms")

fit = fit_scaling(points)
print(f"SA on this machine: time ~ V^{fit.slope:.2f}, log10 intercept {fit.intercept:.2f}")

V = np.array([4.0, 9.0, 16.0])
exact = fit_scaling(list(zip(V, 10 ** (-5.18 + 4.24 * np.log10(V)))))
bayes = fit_scaling(list(zip(V, 10 ** (0.04 + 3.89 * np.log10(V)))))
cross = scaling_intersection(bayes, exact)
print(f"\nslopes 4.24 vs 3.89: the curves cross at V = 10^{np.log10(cross):.1f}")
