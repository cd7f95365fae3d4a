import json

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import gate_params
from elwgames import serialization as ser
from elwgames.exceptions import InvalidInputError
from elwgames.game import GameSpec, classical_strategy, play, random_strategy
from elwgames.gates import GateParams, sample_symmetric_unitary


@settings(max_examples=60, deadline=None)
@given(gate_params())
def test_gate_params_round_trip(p):
    text = ser.dumps(ser.gate_params_to_dict(p))
    assert ser.gate_params_from_dict(json.loads(text)) == p


def test_gate_params_schema():
    d = ser.gate_params_to_dict(GateParams.from_pairs(3, [0.1, 0.2], [(1, 2, 0.3)]))
    assert d == {"n": 3, "lambda": [0.1, 0.2], "mu": [[1, 2, 0.3]]}
    with pytest.raises(InvalidInputError):
        ser.gate_params_from_dict({**d, "extra": 1})
    with pytest.raises(InvalidInputError):
        ser.gate_params_from_dict({"n": 3})
    with pytest.raises(InvalidInputError):
        ser.gate_params_from_dict({"n": 3, "lambda": [0.1, "x"]})
    p = ser.gate_params_from_dict({"n": 2, "lambda": [0.25]}, pi_units=True)
    assert p.lam[0] == np.pi / 4


def test_symmetric_unitary_seed_round_trip():
    w = sample_symmetric_unitary(3, 9)
    d = ser.gate_to_dict(w)
    assert d == {"n": 3, "symmetric_unitary_seed": 9}
    assert np.array_equal(ser.gate_from_dict(json.loads(ser.dumps(d))).w, w.w)
    for bad in ({"n": 3, "symmetric_unitary_seed": -1}, {"n": 3, "symmetric_unitary_seed": 1, "x": 0}):
        with pytest.raises(InvalidInputError):
            ser.gate_from_dict(bad)


def test_strategy_round_trip(rng):
    s = random_strategy(3, rng)
    back = ser.strategy_from_dict(json.loads(ser.dumps(ser.strategy_to_dict(s))))
    assert np.array_equal(back.coords, s.coords)
    c = ser.strategy_from_dict({"n": 3, "classical": 2})
    assert np.allclose(c.unitary, classical_strategy(3, 2).unitary)
    with pytest.raises(InvalidInputError):
        ser.strategy_from_dict({"n": 3, "classical": 1, "coords": []})


def test_game_round_trip(rng):
    for gate in (GateParams(2, [0.7]), sample_symmetric_unitary(2, 4)):
        spec = GameSpec(2, rng.normal(size=(2, 2)), rng.normal(size=(2, 2)), gate, True)
        back = ser.game_from_dict(json.loads(ser.dumps(ser.game_to_dict(spec))))
        assert np.array_equal(back.payoff_a, spec.payoff_a)
        assert np.array_equal(back.payoff_b, spec.payoff_b)
        assert back.require_maximal and np.allclose(back.gate, spec.gate)
        assert ser.game_to_dict(back) == ser.game_to_dict(spec)
    nested = ser.game_from_dict({"n": 2, "payoff_a": [[1, 2], [3, 4]], "payoff_b": [1, 2, 3, 4]})
    assert np.array_equal(nested.payoff_a, nested.payoff_b)
    with pytest.raises(InvalidInputError):
        ser.game_from_dict({"n": 2, "payoff_a": [1, 2, 3], "payoff_b": [1, 2, 3, 4]})


def test_outcome_csv(rng):
    spec = GameSpec(2, [[3, 0], [5, 1]], [[3, 5], [0, 1]], GateParams(2, [0.4]))
    out = play(spec, random_strategy(2, rng), random_strategy(2, rng))
    lines = ser.outcome_to_csv(spec, out).splitlines()
    assert lines[0] == "sigma_a,sigma_b,probability,weighted_payoff_a,weighted_payoff_b"
    rows = [list(map(float, l.split(","))) for l in lines[1:]]
    assert abs(sum(r[3] for r in rows) - out.payoff_a) < 1e-12
    assert abs(sum(r[4] for r in rows) - out.payoff_b) < 1e-12
    # repr floats re-parse exactly
    assert rows[0][2] == float(out.probabilities[0, 0])


def test_dumps_rejects_nan():
    with pytest.raises(ValueError):
        ser.dumps({"x": float("nan")})
