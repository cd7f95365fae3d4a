"""Phase equations equivalent to the maximal-entanglement criterion.

The off-diagonal entries of ``J‿ J‿†`` are ``r_{αγ} = Σ_β exp(i φ_{αγ;β})``
with ``φ_{αγ;β} = θ_{αβ} - θ_{γβ}``, where ``θ`` is the phase table of
``J‿``.  The game is maximally entangled iff every ``r_{αγ}`` vanishes.
Each ``φ`` is linear in the gate angles with integer coefficients, which
:func:`phase_coefficients` exposes for the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .exceptions import InvalidInputError
from .gates import GateParams, flat_exponent, n_params

__all__ = [
    "fold",
    "torus_distance",
    "phi",
    "PhaseResidual",
    "residuals",
    "pairs",
    "phase_coefficients",
    "objective",
    "objective_and_gradient",
    "four_phase_parametrize",
]

TWO_PI = 2.0 * np.pi


def fold(x):
    """Reduce angles into ``(-π, π]``."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    return np.where(y == -np.pi, np.pi, y)


def torus_distance(x, y) -> float:
    """Componentwise-mod-2π sup distance between two angle vectors."""
    return float(np.max(np.abs(fold(np.asarray(x) - np.asarray(y))), initial=0.0))


def phi(p: GateParams, alpha: int, gamma: int, beta: int) -> float:
    """Unreduced phase ``φ_{αγ;β}`` for 1-based ``α < γ`` and ``β``.

    Written term by term with Kronecker deltas; :func:`residuals` uses the
    table difference instead, and the tests hold the two against each other.
    """
    n = p.n
    if not (1 <= alpha < gamma <= n and 1 <= beta <= n):
        raise InvalidInputError(
            f"indices (α={alpha}, γ={gamma}, β={beta}) outside 1 <= α < γ <= {n}, 1 <= β <= {n}"
        )
    L, M = p.padded()

    def d(i, j):
        return 1.0 if i == j else 0.0

    a, g, b = alpha, gamma, beta
    value = (
        (L[a] + L[a - 1]) * d(a, b)
        - (L[g] + L[g - 1]) * d(g, b)
        - (L[a] * d(a, b - 1) - L[g] * d(g, b - 1))
        - (L[a - 1] * d(a, b + 1) - L[g - 1] * d(g, b + 1))
        + M[a, b] - M[g, b]
        + M[a - 1, b - 1] - M[g - 1, b - 1]
        - M[a - 1, b] + M[g - 1, b]
        - M[a, b - 1] + M[g, b - 1]
    )
    return float(value)


def pairs(n: int) -> list[tuple[int, int]]:
    """1-based index pairs ``α < γ`` in lexicographic order."""
    return [(a + 1, g + 1) for a, g in combinations(range(n), 2)]


@dataclass(frozen=True)
class PhaseResidual:
    n: int
    pairs: tuple
    residuals: np.ndarray
    sum_defects: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals)))

    @property
    def max_sum_defect(self) -> float:
        return float(np.max(np.abs(self.sum_defects)))


def _phase_matrix(theta: np.ndarray) -> np.ndarray:
    """``φ[pair, β]`` for all ``α < γ`` pairs."""
    ia, ig = np.triu_indices(theta.shape[0], k=1)
    return theta[ia] - theta[ig]


def residuals(p: GateParams) -> PhaseResidual:
    ph = _phase_matrix(flat_exponent(p))
    r = np.exp(1j * ph).sum(axis=1)
    defects = fold(ph.sum(axis=1))
    return PhaseResidual(p.n, tuple(pairs(p.n)), r, defects)


@lru_cache(maxsize=None)
def _basis_tables(n: int) -> np.ndarray:
    """Integer tables ``B[j]`` with ``θ = Σ_j x_j B[j]`` for the parameter vector ``x``."""
    m = n_params(n)
    out = np.empty((m, n, n))
    for j in range(m):
        e = np.zeros(m)
        e[j] = 1.0
        out[j] = flat_exponent(GateParams.from_vector(n, e))
    out = np.rint(out)
    out.flags.writeable = False
    return out


def phase_coefficients(n: int) -> np.ndarray:
    """Integer coefficients ``C[pair, β, j]`` with ``φ_{pair;β} = Σ_j C x_j``."""
    b = _basis_tables(n)
    ia, ig = np.triu_indices(n, k=1)
    return (b[:, ia, :] - b[:, ig, :]).transpose(1, 2, 0).astype(int)


@lru_cache(maxsize=None)
def phase_coefficients_f(n: int) -> np.ndarray:
    c = phase_coefficients(n).astype(float)
    c.flags.writeable = False
    return c


def _phases_from_vector(n: int, x: np.ndarray) -> np.ndarray:
    return phase_coefficients_f(n) @ x


def objective(n: int, x) -> float:
    """``F(x) = Σ_{α<γ} |r_{αγ}(x)|²`` over the parameter vector ``x``."""
    r = np.exp(1j * _phases_from_vector(n, np.asarray(x, dtype=float))).sum(axis=1)
    return float(np.sum(np.abs(r) ** 2))


def objective_and_gradient(n: int, x) -> tuple[float, np.ndarray]:
    """``F`` and its exact gradient; ``∂r/∂x_j = Σ_β i C[·,β,j] e^{iφ}``."""
    c = phase_coefficients_f(n)
    e = np.exp(1j * (c @ np.asarray(x, dtype=float)))
    r = e.sum(axis=1)
    dr = 1j * np.einsum("pb,pbj->pj", e, c)
    f = float(np.sum(np.abs(r) ** 2))
    g = 2.0 * np.real(np.einsum("p,pj->j", r.conj(), dr))
    return f, g


def residual_vector_and_jacobian(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Stacked ``(Re r, Im r)`` and its Jacobian, for least-squares solvers."""
    c = phase_coefficients_f(n)
    e = np.exp(1j * (c @ np.asarray(x, dtype=float)))
    r = e.sum(axis=1)
    dr = 1j * np.einsum("pb,pbj->pj", e, c)
    return np.concatenate([r.real, r.imag]), np.vstack([dr.real, dr.imag])


def four_phase_parametrize(phi1: float, m: int, n_int: int) -> tuple[float, float, float, float]:
    """Four phases with vanishing unit-vector sum and phase sum ``≡ 0 (mod 2π)``.

    Two antipodal pairs: ``φ₃ = φ₁ + (2m+1)π`` and ``φ₄ = φ₂ + (2m+1)π`` with
    ``φ₂ = n_int·π - φ₁``.
    """
    m, n_int = int(m), int(n_int)
    p1 = float(phi1)
    p2 = n_int * np.pi - p1
    p3 = p1 + (2 * m + 1) * np.pi
    p4 = -p1 + (2 * m + n_int + 1) * np.pi
    return p1, p2, p3, p4
