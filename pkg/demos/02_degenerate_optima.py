"""How many ways are there to place four turbines optimally?

Enumerates all 1820 four-turbine layouts, keeps every one that reaches the
maximum, and prints the average placement. Corners come out most popular
because a corner turbine has the fewest neighbours to shade or be shaded by.

    python demos/02_degenerate_optima.py
"""

import numpy as np

from wflo.harness import ExperimentConfig, enumerate_degenerate, mean_placement

cfg = ExperimentConfig(l_grid=4, m=4)
best, layouts = enumerate_degenerate(cfg)
print(f"best power {best:.1f} kW, reached by {len(layouts)} layouts")
print("first five:", ", ".join(layouts[:5]))

heat = mean_placement(layouts, cfg.geometry).mean_placement
print("\naverage placement (row 1 is the north edge):")
print(np.array2string(heat, precision=3))
print(f"sum = {heat.sum():.6f}")

for l in (2, 3):
    small = ExperimentConfig(l_grid=l, m=min(4, l * l))
    value, opt = enumerate_degenerate(small)
    print(f"l_grid={l}: best {value:.1f} kW over {len(opt)} layout(s)")
