"""Four strategies: continuous one-parameter families of solutions.

Each family is swept along its free angle beta; the numerical solver is
then run from random starts and its hits are located on the families.

Run: python3 demos/03_four_strategy_families.py
"""

import numpy as np

from elwgames import catalog, match_family, residuals, solve_numeric

betas = np.linspace(0, 2 * np.pi, 100, endpoint=False)
print("family   worst residual along beta")
for fam in catalog(4):
    ints = {k: 0 for k in fam.integer_params}
    worst = max(residuals(fam(beta=b, **ints)).max_residual for b in betas)
    print(f"{fam.family_id:8s} {worst:.1e}    mu23 = {fam.formulas['mu23']}")

sols = solve_numeric(4, seed=0, restarts=200)
hits = [match_family(p) for p in sols]
print(f"\nsolver: {len(sols)} distinct solutions, {sum(h is not None for h in hits)} lie on a listed family")
for h in [h for h in hits if h][:5]:
    print("  ", h[0], {k: round(v, 4) if isinstance(v, float) else v for k, v in h[1].items()})
