"""The Prisoner's Dilemma played through an entangling gate.

Classical moves still work as before, mutual defection stops being an
equilibrium once the gate is maximally entangling, and either player can
force any outcome with a suitable reply.

Run: python3 demos/05_quantum_prisoners_dilemma.py
"""

import numpy as np

from elwgames import (
    GateParams,
    classical_strategy,
    counterstrategy,
    play,
    prisoners_dilemma,
    pure_nash_probe,
)
from elwgames.game import random_strategy

C, D = classical_strategy(2, 0), classical_strategy(2, 1)
classical = prisoners_dilemma()
quantum = prisoners_dilemma(GateParams(2, [np.pi / 4]))

print("Classical moves under the entangling gate:")
for na, a in (("C", C), ("D", D)):
    for nb, b in (("C", C), ("D", D)):
        out = play(quantum, a, b)
        print(f"  ({na},{nb}) -> payoffs ({out.payoff_a:.3f}, {out.payoff_b:.3f})")

for label, spec in (("no entanglement", classical), ("maximal entanglement", quantum)):
    rep = pure_nash_probe(spec, (D, D), seed=0)
    print(f"\nmutual defection, {label}: best deviation gains "
          f"A={rep.delta_a:.3f}, B={rep.delta_b:.3f}, equilibrium={rep.is_equilibrium}")

rng = np.random.default_rng(0)
ua = random_strategy(2, rng)
print("\nBob replies to a random move of Alice and steers the outcome:")
for target in ((1, 1), (1, 2), (2, 1), (2, 2)):
    ub = counterstrategy(quantum, ua, target, seed=0)
    p = play(quantum, ua, ub).probabilities[target[0] - 1, target[1] - 1]
    print(f"  target {target}: probability {p:.9f}")
