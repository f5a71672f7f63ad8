"""
Trading measurement depth for parallel units
============================================

For a fixed T count, a deeper circuit runs layers one after another while a
shallower one needs more units working side by side. Scan the T gates per
layer to find the cheapest option, then fit how the equilibrium optimum grows
with the number of logical qubits.
"""

import numpy as np

from ftqc_estimate import HardwareProfile, equilibrium_fit, equilibrium_t_layer, optimal_t_layer

DAY = 86400
profile = HardwareProfile(code_cycle_time=1e-6, physical_error_rate=1e-3)

# fixed volume n * T = 5e13, one-day target
for n in (500, 2000):
    r = optimal_t_layer(n, int(5e13 / n), profile, DAY)
    print(f"n={n:5d}: best T per layer {r.t_layer:7.1f} (depth ratio {r.depth_ratio:.2e}), "
          f"{r.estimate.total_physical_qubits / 1e6:.1f}M qubits, {r.phase.value}")

# a small circuit needs no parallelism at all
r = optimal_t_layer(100, 10**6, profile, DAY)
print(f"tiny circuit: T per layer {r.t_layer:g} ({r.phase.value})")

points = []
for n in (100, 200, 500, 1000, 2000, 10000):
    mean, results = equilibrium_t_layer(n, np.geomspace(3e9, n * 1e10, 25), profile, DAY)
    points.append((n, mean))
    phases = {}
    for res in results:
        phases[res.phase.value] = phases.get(res.phase.value, 0) + 1
    print(f"N={n:5d}: equilibrium T per layer {mean:7.1f}  {phases}")

fit = equilibrium_fit(points)
print(f"T_layer ~ {fit.coefficient:.2f} * N^{fit.exponent:.3f} "
      f"(rms log residual {fit.residual:.3f})")
