"""JSON and CSV encodings of gates, games, strategies and results."""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .exceptions import InvalidInputError
from .game import GameSpec, Outcome, Strategy, classical_strategy
from .gates import GateParams, sample_symmetric_unitary

__all__ = [
    "dumps",
    "gate_params_to_dict",
    "gate_params_from_dict",
    "gate_to_dict",
    "gate_from_dict",
    "strategy_to_dict",
    "strategy_from_dict",
    "game_to_dict",
    "game_from_dict",
    "outcome_to_csv",
    "rows_to_csv",
]

_GATE_KEYS = {"n", "lambda", "mu"}
_W_KEYS = {"n", "symmetric_unitary_seed"}
_GAME_KEYS = {"n", "payoff_a", "payoff_b", "gate", "require_maximal"}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _reject_unknown(d: dict, allowed: set, what: str):
    if not isinstance(d, dict):
        raise InvalidInputError(f"{what} must be a JSON object")
    extra = set(d) - allowed
    if extra:
        raise InvalidInputError(f"unknown field(s) in {what}: {sorted(extra)}")


def _require(d: dict, keys, what: str):
    missing = [k for k in keys if k not in d]
    if missing:
        raise InvalidInputError(f"{what} is missing field(s): {missing}")


def gate_params_to_dict(p: GateParams) -> dict:
    return {
        "n": p.n,
        "lambda": [float(v) for v in p.lam],
        "mu": [[k, l, v] for k, l, v in p.mu_pairs()],
    }


def gate_params_from_dict(d: dict, pi_units: bool = False) -> GateParams:
    """Parse ``{"n", "lambda", "mu": [[k, l, value], ...]}``; ``mu`` may be omitted."""
    _reject_unknown(d, _GATE_KEYS, "gate parameters")
    _require(d, ("n", "lambda"), "gate parameters")
    scale = np.pi if pi_units else 1.0
    try:
        lam = [scale * float(v) for v in d["lambda"]]
        mu = [(int(k), int(l), scale * float(v)) for k, l, v in d.get("mu", [])]
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed gate parameters: {exc}") from None
    return GateParams.from_pairs(int(d["n"]), lam, mu)


def gate_to_dict(gate) -> dict:
    """Either a parameter record or a symmetric-unitary seed record."""
    if isinstance(gate, GateParams):
        return gate_params_to_dict(gate)
    seed = getattr(gate, "seed", None)
    if seed is None:
        raise InvalidInputError("only seeded symmetric unitaries can be serialized")
    return {"n": gate.n, "symmetric_unitary_seed": seed}


def gate_from_dict(d: dict, pi_units: bool = False):
    if isinstance(d, dict) and "symmetric_unitary_seed" in d:
        _reject_unknown(d, _W_KEYS, "symmetric-unitary gate")
        _require(d, ("n",), "symmetric-unitary gate")
        seed = d["symmetric_unitary_seed"]
        if not isinstance(seed, int) or seed < 0:
            raise InvalidInputError("symmetric_unitary_seed must be a nonnegative integer")
        return sample_symmetric_unitary(int(d["n"]), seed)
    return gate_params_from_dict(d, pi_units)


def strategy_to_dict(s: Strategy) -> dict:
    return {"n": s.n, "coords": [float(v) for v in s.coords]}


def strategy_from_dict(d: dict) -> Strategy:
    """``{"n", "coords": [...]}`` or ``{"n", "classical": k}`` (0-based shift)."""
    if not isinstance(d, dict) or "n" not in d:
        raise InvalidInputError("strategy must be an object with field 'n'")
    if "classical" in d:
        _reject_unknown(d, {"n", "classical"}, "strategy")
        return classical_strategy(int(d["n"]), int(d["classical"]))
    _reject_unknown(d, {"n", "coords"}, "strategy")
    _require(d, ("coords",), "strategy")
    return Strategy.from_coords(int(d["n"]), d["coords"])


def game_to_dict(spec: GameSpec) -> dict:
    return {
        "n": spec.n,
        "payoff_a": spec.payoff_a.ravel().tolist(),
        "payoff_b": spec.payoff_b.ravel().tolist(),
        "gate": gate_to_dict(spec.gate_params),
        "require_maximal": spec.require_maximal,
    }


def game_from_dict(d: dict, pi_units: bool = False) -> GameSpec:
    """Payoff tables are row-major arrays, flat or nested."""
    _reject_unknown(d, _GAME_KEYS, "game")
    _require(d, ("n", "payoff_a", "payoff_b"), "game")
    n = int(d["n"])
    gate = gate_from_dict(d["gate"], pi_units) if "gate" in d else GateParams.zeros(n)
    try:
        pa = np.asarray(d["payoff_a"], dtype=float).ravel()
        pb = np.asarray(d["payoff_b"], dtype=float).ravel()
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed payoff table: {exc}") from None
    return GameSpec(n, pa, pb, gate, bool(d.get("require_maximal", False)))


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def outcome_to_csv(spec: GameSpec, out: Outcome) -> str:
    """One row per outcome ``(σ, σ')`` (1-based); the weighted payoff columns sum
    to the expected payoffs."""
    rows = []
    for a in range(spec.n):
        for b in range(spec.n):
            p = float(out.probabilities[a, b])
            rows.append([a + 1, b + 1, p, p * spec.payoff_a[a, b], p * spec.payoff_b[a, b]])
    return rows_to_csv(["sigma_a", "sigma_b", "probability", "weighted_payoff_a", "weighted_payoff_b"], rows)
