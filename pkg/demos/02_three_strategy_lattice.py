"""Three strategies: the maximally entangling gates form a finite set.

The phase conditions force every angle onto the lattice 2*pi*k/9.  This
script lists the solutions and shows that nudging any of them destroys
maximal entanglement, so none lies on a continuous family.

Run: python3 demos/02_three_strategy_lattice.py
"""

import numpy as np

from elwgames import GateParams, analyze, enumerate_n3, residuals

sols = enumerate_n3()
print(f"{len(sols)} solutions (angles as k/9 of a full turn):")
for s in sols[:10]:
    print("  (lambda1, lambda2, mu12) =", s.numerators, "  entropy =", round(analyze(s.params).entropy, 12))
print("  ...")

x = sols[0].params.to_vector()
for eps in (1e-6, 1e-4, 1e-3, 1e-2):
    y = x.copy()
    y[0] += eps
    print(f"perturb lambda1 by {eps:g}: max residual {residuals(GateParams.from_vector(3, y)).max_residual:.2e}")
print("ln 3 =", np.log(3))
