"""Two strategies per player: one angle, four maximally entangling roots.

Run: python3 demos/01_two_strategy_gate.py
"""

import numpy as np

from elwgames import GateParams, analyze, build_flat_gate, solve_numeric

print("Flattened gate at lambda = pi/4:")
print(np.round(build_flat_gate(GateParams(2, [np.pi / 4])).entries, 6))

print("\nEntropy of the initial state as lambda sweeps one period (ln 2 = %.6f):" % np.log(2))
for lam in np.linspace(0, np.pi, 9):
    rep = analyze(GateParams(2, [lam]))
    bar = "#" * int(40 * rep.entropy / np.log(2))
    print(f"  lambda = {lam:5.3f}  S = {rep.entropy:.6f}  {bar}")

roots = sorted(float(p.lam[0]) for p in solve_numeric(2, seed=0, restarts=50))
print("\nNumerical roots in [0, 2pi), in units of pi:", [round(r / np.pi, 6) for r in roots])
