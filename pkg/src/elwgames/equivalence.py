"""Comparing two gates as games.

Two verdicts are reported because they answer different questions:

* strict: both gates produce the same outcome table for every strategy
  profile (checked on all classical pairs plus seeded random profiles);
* relabelling: the diagonal tables satisfy ``T'_{αβ} = a_α T_{αβ} b_β``
  with unit-modulus ``a, b``, i.e. ``J̃' = (J̃_A ⊗ J̃_B) J̃`` for diagonal
  local factors, so the games agree once strategies are conjugated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import InvalidInputError
from .game import GameSpec, classical_strategy, play, random_strategy
from .gates import GateParams, SymmetricUnitary, build_flat_gate, flat_gate_from_symmetric_unitary

__all__ = ["EquivalenceReport", "gate_table", "local_phase_factors", "compare_gates"]


@dataclass(frozen=True)
class EquivalenceReport:
    n: int
    strict_equal: bool
    max_outcome_difference: float
    relabel_equivalent: bool
    profiles_checked: int

    def to_dict(self) -> dict:
        return asdict(self)


def gate_table(gate) -> np.ndarray:
    if isinstance(gate, GateParams):
        return np.asarray(build_flat_gate(gate).entries)
    if isinstance(gate, SymmetricUnitary):
        return flat_gate_from_symmetric_unitary(gate)
    raise InvalidInputError(f"unsupported gate type {type(gate).__name__}")


def local_phase_factors(t1, t2, tol: float = 1e-9):
    """Unit-modulus ``(a, b)`` with ``t2 = diag(a) t1 diag(b)``, or ``None``.

    Phases are propagated along the bipartite graph of nonzero entries
    (rows and columns as vertices), one root per connected component, then
    every entry is checked.
    """
    t1 = np.asarray(t1, dtype=complex)
    t2 = np.asarray(t2, dtype=complex)
    if t1.shape != t2.shape or t1.shape[0] != t1.shape[1]:
        return None
    if np.max(np.abs(np.abs(t1) - np.abs(t2))) > tol:
        return None
    n = t1.shape[0]
    live = np.abs(t1) > tol
    a = np.full(n, np.nan, complex)
    b = np.full(n, np.nan, complex)
    for root in range(n):
        if not np.isnan(a[root]):
            continue
        a[root] = 1.0
        queue = deque([("row", root)])
        while queue:
            kind, i = queue.popleft()
            for j in range(n):
                if kind == "row" and live[i, j] and np.isnan(b[j]):
                    b[j] = t2[i, j] / (a[i] * t1[i, j])
                    queue.append(("col", j))
                elif kind == "col" and live[j, i] and np.isnan(a[j]):
                    a[j] = t2[j, i] / (t1[j, i] * b[i])
                    queue.append(("row", j))
    b[np.isnan(b)] = 1.0  # columns with no nonzero entry are unconstrained
    b = b / np.abs(b)
    a = a / np.abs(a)
    if np.max(np.abs(a[:, None] * t1 * b[None, :] - t2)) > tol:
        return None
    return a, b


def compare_gates(g1, g2, seed: int = 0, samples: int = 16, tol: float = 1e-9) -> EquivalenceReport:
    n = g1.n
    if g2.n != n:
        raise InvalidInputError("gates act on different numbers of strategies")
    zeros = np.zeros((n, n))
    s1, s2 = GameSpec(n, zeros, zeros, g1), GameSpec(n, zeros, zeros, g2)
    profiles = [(classical_strategy(n, i), classical_strategy(n, j)) for i in range(n) for j in range(n)]
    rng = np.random.default_rng(seed)
    profiles += [(random_strategy(n, rng), random_strategy(n, rng)) for _ in range(samples)]
    diff = max(
        float(np.max(np.abs(play(s1, ua, ub).probabilities - play(s2, ua, ub).probabilities)))
        for ua, ub in profiles
    )
    relabel = local_phase_factors(gate_table(g1), gate_table(g2), tol) is not None
    return EquivalenceReport(
        n=n,
        strict_equal=diff <= tol,
        max_outcome_difference=diff,
        relabel_equivalent=relabel,
        profiles_checked=len(profiles),
    )
