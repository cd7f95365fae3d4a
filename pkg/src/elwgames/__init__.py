"""Maximally entangling gates for N-strategy quantum games.

The package builds the Cartan-parametrized gate family, tests and solves
the maximal-entanglement conditions, and simulates the resulting games.
"""

from .catalog import SolutionFamily, catalog, enumerate_n3, match_family
from .entanglement import EntanglementReport, analyze, analyze_gate, analyze_w
from .equivalence import EquivalenceReport, compare_gates
from .exceptions import (
    ELWError,
    InvalidInputError,
    PreconditionError,
    SearchFailureError,
    UnsupportedError,
)
from .game import (
    GameSpec,
    Outcome,
    Strategy,
    classical_strategy,
    counterstrategy,
    play,
    prisoners_dilemma,
    pure_nash_probe,
)
from .gates import (
    FlatGate,
    GateParams,
    SymmetricUnitary,
    build_flat_gate,
    build_full_gate,
    build_J_tilde,
    sample_symmetric_unitary,
)
from .phases import objective, objective_and_gradient, residuals
from .solver import solve_numeric

__version__ = "0.1.0"

__all__ = [
    "ELWError", "InvalidInputError", "PreconditionError", "SearchFailureError",
    "UnsupportedError", "GateParams", "FlatGate", "SymmetricUnitary",
    "build_flat_gate", "build_J_tilde", "build_full_gate", "sample_symmetric_unitary",
    "EntanglementReport", "analyze", "analyze_w", "analyze_gate",
    "residuals", "objective", "objective_and_gradient",
    "SolutionFamily", "catalog", "enumerate_n3", "match_family", "solve_numeric",
    "GameSpec", "Outcome", "Strategy", "classical_strategy", "play",
    "counterstrategy", "pure_nash_probe", "prisoners_dilemma",
    "EquivalenceReport", "compare_gates",
]
