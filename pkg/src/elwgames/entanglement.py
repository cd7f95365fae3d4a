"""Maximal-entanglement diagnostics for the game's initial state.

Two independent routes decide maximality.  The flat route checks that
``(1/N) J‿ J‿† = I`` and never forms an ``N² × N²`` object; the reduced route
builds ``ρ_i = |Ψ_i⟩⟨Ψ_i|`` and compares both partial traces with ``I/N``.
The flat route is authoritative; the reduced route is its cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import InvalidInputError
from .gates import (
    GateParams,
    SymmetricUnitary,
    build_flat_gate,
    build_full_gate,
    conjugate_gate,
    flat_gate_from_symmetric_unitary,
    fourier_matrix,
    _scaled_residual,
)
from .linalg import entanglement_entropy, partial_trace, unitarity_residual

__all__ = [
    "DEFAULT_TOL",
    "EntanglementReport",
    "initial_state",
    "analyze",
    "analyze_w",
    "analyze_gate",
    "is_maximal_gate",
]

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class EntanglementReport:
    n: int
    entropy: float
    max_entropy: float
    flat_unitarity_residual: float
    reduced_residual_A: float
    reduced_residual_B: float
    is_maximal: bool
    tol: float

    @property
    def criteria_agree(self) -> bool:
        return self.is_maximal == (self.reduced_residual_B <= self.tol)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EntanglementReport":
        return cls(**d)


def initial_state(gate) -> np.ndarray:
    """``|Ψ_i⟩ = J (|1⟩⊗|1⟩)``, i.e. the first column of ``J``."""
    gate = np.asarray(gate, dtype=complex)
    if gate.ndim != 2 or gate.shape[0] != gate.shape[1]:
        raise InvalidInputError(f"gate of shape {gate.shape} is not square")
    res = unitarity_residual(gate)
    if res > 1e-8:
        raise InvalidInputError(f"gate is not unitary (residual {res:.3e})")
    psi = gate[:, 0].copy()
    return psi / np.linalg.norm(psi)


def _state_from_table(table: np.ndarray) -> np.ndarray:
    # (V⊗V) diag(table) (V†⊗V†) |11⟩ without requiring the diagonal to be unitary:
    # (V†⊗V†)|11⟩ is the uniform vector, so the coefficient matrix is V (table/N) Vᵀ.
    n = table.shape[0]
    v = fourier_matrix(n)
    return (v @ (table / n) @ v.T).ravel()


def _report(n, flat_res, psi, tol, cross_check=True) -> EntanglementReport:
    rho = np.outer(psi, psi.conj())
    target = np.eye(n) / n
    res_b = float(np.max(np.abs(partial_trace(rho, n, "B") - target)))
    res_a = float(np.max(np.abs(partial_trace(rho, n, "A") - target)))
    rep = EntanglementReport(
        n=n,
        entropy=entanglement_entropy(psi, n),
        max_entropy=float(np.log(n)),
        flat_unitarity_residual=float(flat_res),
        reduced_residual_A=res_a,
        reduced_residual_B=res_b,
        is_maximal=bool(flat_res <= tol),
        tol=tol,
    )
    if cross_check and not rep.criteria_agree:
        log.warning(
            "flat and reduced criteria disagree: flat=%.3e reduced=%.3e tol=%.1e",
            flat_res, res_b, tol,
        )
    return rep


def _check_tol(tol):
    if not (0 < tol <= 1e-2):
        raise InvalidInputError(f"tolerance must lie in (0, 1e-2], got {tol}")


def analyze(p: GateParams, tol: float = DEFAULT_TOL) -> EntanglementReport:
    _check_tol(tol)
    flat_res = build_flat_gate(p).unitarity_residual()
    psi = initial_state(build_full_gate(p))
    return _report(p.n, flat_res, psi, tol)


def analyze_w(w, tol: float = DEFAULT_TOL) -> EntanglementReport:
    """Report for the symmetric-unitary route.

    ``w`` may be a validated :class:`SymmetricUnitary` or a raw matrix; a raw
    matrix skips validation so that broken inputs can be diagnosed.
    """
    _check_tol(tol)
    if isinstance(w, SymmetricUnitary):
        table = flat_gate_from_symmetric_unitary(w)
    else:
        w = np.asarray(w, dtype=complex)
        table = np.sqrt(w.shape[0]) * w
    n = table.shape[0]
    psi = _state_from_table(table)
    norm = np.linalg.norm(psi)
    return _report(n, _scaled_residual(table), psi / norm, tol)


def analyze_gate(gate, tol: float = DEFAULT_TOL) -> EntanglementReport:
    """Report for an arbitrary unitary game gate, using the reduced route only."""
    _check_tol(tol)
    gate = np.asarray(gate, dtype=complex)
    n = int(round(np.sqrt(gate.shape[0])))
    psi = initial_state(gate)
    # no flat table for a generic gate; the reduced route decides
    rep = _report(n, 0.0, psi, tol, cross_check=False)
    return EntanglementReport(
        n=n,
        entropy=rep.entropy,
        max_entropy=rep.max_entropy,
        flat_unitarity_residual=float("nan"),
        reduced_residual_A=rep.reduced_residual_A,
        reduced_residual_B=rep.reduced_residual_B,
        is_maximal=bool(max(rep.reduced_residual_A, rep.reduced_residual_B) <= tol),
        tol=tol,
    )


def is_maximal_gate(gate, tol: float = DEFAULT_TOL) -> bool:
    return analyze_gate(gate, tol).is_maximal


def full_gate_from_w(w: SymmetricUnitary) -> np.ndarray:
    """Literal ``(V⊗V) diag(√N W) (V†⊗V†)``; unitary only for phase tables."""
    return conjugate_gate(np.diag(flat_gate_from_symmetric_unitary(w).ravel()))
