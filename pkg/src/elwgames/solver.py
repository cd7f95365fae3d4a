"""Multi-start numerical solution of the phase equations for any N.

The residual vector ``(Re r, Im r)`` is driven to zero by Levenberg-Marquardt
with the exact Jacobian from :mod:`elwgames.phases`.  Starts are uniform on
``[0, 2π)^{C(N,2)}``; converged points are reduced mod 2π and deduplicated
with the torus sup-distance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .exceptions import InvalidInputError
from .gates import GateParams, n_params
from .phases import objective, residual_vector_and_jacobian, torus_distance

__all__ = ["NumericSolution", "solve_numeric", "solve_numeric_detailed", "dedup_torus"]

TWO_PI = 2.0 * np.pi
F_THRESHOLD = 1e-16
DEDUP_RADIUS = 1e-6


@dataclass(frozen=True)
class NumericSolution:
    params: GateParams
    objective: float
    restart: int


def dedup_torus(points, radius: float = DEDUP_RADIUS) -> list[int]:
    """Indices of the first representative of each cluster of ``points``."""
    keep: list[int] = []
    for i, x in enumerate(points):
        if all(torus_distance(x, points[j]) > radius for j in keep):
            keep.append(i)
    return keep


def _polish(n: int, x0: np.ndarray) -> np.ndarray:
    fun = lambda x: residual_vector_and_jacobian(n, x)[0]
    jac = lambda x: residual_vector_and_jacobian(n, x)[1]
    sol = least_squares(fun, x0, jac=jac, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                        max_nfev=2000)
    return sol.x


def solve_numeric_detailed(n: int, seed: int = 0, restarts: int = 32) -> list[NumericSolution]:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    if restarts < 1:
        raise InvalidInputError(f"restarts must be >= 1, got {restarts}")
    rng = np.random.default_rng(seed)
    m = n_params(n)
    starts = rng.uniform(0.0, TWO_PI, size=(restarts, m))
    found, values, origin = [], [], []
    for i, x0 in enumerate(starts):
        x = np.mod(_polish(n, x0), TWO_PI)
        x[x >= TWO_PI] = 0.0  # mod of a tiny negative rounds up to 2π
        f = objective(n, x)
        if f < F_THRESHOLD:
            found.append(x)
            values.append(f)
            origin.append(i)
    return [
        NumericSolution(GateParams.from_vector(n, found[i]), values[i], origin[i])
        for i in dedup_torus(found)
    ]


def solve_numeric(n: int, seed: int = 0, restarts: int = 32) -> list[GateParams]:
    """Distinct (mod 2π) zeros of ``Σ|r_{αγ}|²`` reached from ``restarts`` seeded starts."""
    return [s.params for s in solve_numeric_detailed(n, seed, restarts)]
