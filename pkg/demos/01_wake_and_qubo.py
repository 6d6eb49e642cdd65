"""Wake model to QUBO, step by step.

Builds the 4x4 wind farm under the 36-direction regime, shows how much one
turbine shades its neighbour, assembles the QUBO weight matrix and checks
that the QUBO value and the farm power agree on a few layouts.

    python demos/01_wake_and_qubo.py
"""

import numpy as np

from wflo import GridGeometry, WakeParams, build_q, evaluate_qubo, mosetti_regime_2, objective_f, penalty_g
from wflo.wake import alpha_T, deficit_matrix, reduced_speed

geo = GridGeometry(4)
regime = mosetti_regime_2()
wake = WakeParams()

print(f"{geo.q} sites, {len(regime.arrangements)} wind directions at 12 m/s")
print(f"wake expansion rate alpha_T = {alpha_T(wake):.3f}")
for delta in (0.0, 1.0, 2**0.5, 3.0):
    print(f"  speed at distance {delta:5.3f} from a turbine: {reduced_speed(wake, 12.0, delta):.4f} m/s")

# directed wake loss D[i, j]: power lost at j because of a turbine at i
D = deficit_matrix(regime, wake, geo)
print(f"\nfree power per turbine: {regime.free_power():.1f} kW")
print(f"loss site 1 -> site 2 (east neighbour): {D[0, 1]:.3f} kW")
print(f"loss site 1 -> site 6 (diagonal):       {D[0, 5]:.3f} kW")
print(f"loss site 1 -> site 3 (two cells away): {D[0, 2]:.3f} kW")

prob = build_q(regime, wake, geo, lambda1=1000.0, m=4)
print(f"\nQ diagonal: {prob.Q[0, 0]:.1f}, constant offset {prob.constant_offset:.0f}")
print(f"nonzero upper-triangular entries: {np.count_nonzero(prob.Q)}")

layouts = {
    "four corners": "1001000000001001",
    "a tight block": "1100110000000000",
    "five turbines": "1001000001001001",
}
print("\nlayout           power    QUBO+offset   -power+penalty")
for name, s in layouts.items():
    x = np.array([int(c) for c in s])
    power = objective_f(x, regime, wake, geo)
    lhs = evaluate_qubo(prob, x) + prob.constant_offset
    rhs = -power + penalty_g(x, 1000.0, 0.0, 4, 0.0, geo)
    print(f"{name:15s} {power:8.2f} {lhs:12.2f} {rhs:14.2f}")
