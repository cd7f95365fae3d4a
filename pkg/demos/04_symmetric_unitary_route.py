"""Any symmetric unitary W gives a maximally entangled initial state.

Random symmetric unitaries are sampled as exp(iS) with S real symmetric.
The script also shows that two gates differing by local phase factors play
the same game once strategies are relabelled.

Run: python3 demos/04_symmetric_unitary_route.py
"""

import numpy as np

from elwgames import GateParams, analyze_w, catalog, compare_gates, sample_symmetric_unitary

for n in (2, 3, 4, 5):
    reps = [analyze_w(sample_symmetric_unitary(n, seed)) for seed in range(20)]
    print(f"n={n}: {sum(r.is_maximal for r in reps)}/20 maximal, "
          f"max |S - ln n| = {max(abs(r.entropy - r.max_entropy) for r in reps):.1e}")

(fam,) = catalog(2)
print("\nThe four two-strategy roots compared with lambda = pi/4:")
for k in range(4):
    r = compare_gates(fam(k=0), fam(k=k))
    print(f"  k={k}: identical games={r.strict_equal}, equivalent after relabelling={r.relabel_equivalent}")

r = compare_gates(GateParams(3, [0.2, 0.3]), sample_symmetric_unitary(3, 1))
print("\nunrelated gates:", r.to_dict())
