"""The optimisers on their own, away from the wind farm.

COBYLA on Rosenbrock, Powell on a separable quadratic, Bayesian
optimisation on a periodic function, and simulated annealing against
the exhaustive answer on the 4x4 farm.

    python demos/04_optimizers.py
"""

import math

import numpy as np

from wflo import GridGeometry, build_q, mosetti_regime_2, WakeParams
from wflo.optimizers import (
    BoOptions,
    CobylaOptions,
    PowellOptions,
    bo_minimize,
    cobyla_minimize,
    exhaustive_search,
    powell_minimize,
    simulated_annealing,
)


def rosenbrock(x):
    return 100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2


x, v, h = cobyla_minimize(rosenbrock, [-1.2, 1.0], CobylaOptions(rho_end=1e-8, max_evals=5000))
print(f"COBYLA, Rosenbrock: x = {np.round(x, 5)}, f = {v:.2e}, {h.evaluation_count} evaluations")

c = np.array([1.0, -2.0, 0.5, 3.0])
x, v, h = powell_minimize(lambda t: np.sum((t - c) ** 2), np.zeros(4), PowellOptions(max_sweeps=3))
print(f"Powell, 4-D quadratic: max error {np.abs(x - c).max():.1e}, {h.evaluation_count} evaluations")

x, v, h = bo_minimize(lambda t: math.cos(t[0]), 1, BoOptions(budget=30), seed=0)
print(f"BO, cos(theta) in 30 evaluations: theta = {x[0]:.3f}, value = {v:.4f}")

prob = build_q(mosetti_regime_2(), WakeParams(), GridGeometry(4))
exact = exhaustive_search(prob)
values = [simulated_annealing(prob, seed=s)[1] for s in range(10)]
print(f"\nexhaustive QUBO minimum {exact.value:.1f} over {exact.visited} feasible layouts")
print(f"SA, 10 seeds: best {min(values):.1f}, hits {sum(abs(v - exact.value) < 1e-6 for v in values)}/10")
