import json
import logging

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import gate_params, oracle_entropy, oracle_flat_residual, random_params
from elwgames.catalog import catalog_members
from elwgames.entanglement import (
    EntanglementReport,
    analyze,
    analyze_gate,
    analyze_w,
    initial_state,
)
from elwgames.exceptions import InvalidInputError
from elwgames.gates import GateParams, SymmetricUnitary, build_full_gate, sample_symmetric_unitary

PI = np.pi


def test_initial_state_examples():
    psi = initial_state(np.eye(4))
    assert np.array_equal(psi, [1, 0, 0, 0])
    psi = initial_state(build_full_gate(GateParams(2, [PI / 4])))
    assert abs(oracle_entropy(psi, 2) - np.log(2)) < 1e-12
    with pytest.raises(InvalidInputError):
        initial_state(2 * np.eye(4))


def test_analyze_examples():
    r = analyze(GateParams(2, [PI / 4]))
    assert r.is_maximal and r.flat_unitarity_residual < 1e-12 and r.reduced_residual_B < 1e-12
    r = analyze(GateParams(2, [0.0]))
    assert not r.is_maximal and r.entropy == 0.0
    # family-1 point: β=0.3, p=0, μ23=π/2, substituted by hand
    b, m23 = 0.3, PI / 2
    p = GateParams.from_pairs(4, [-b - PI, 2 * m23 - PI, -b],
                              [(1, 2, m23 - PI), (1, 3, b + m23), (2, 3, m23)])
    assert oracle_flat_residual(p) < 1e-12
    assert analyze(p).is_maximal


def test_analyze_tol_range():
    with pytest.raises(InvalidInputError):
        analyze(GateParams(2, [0.0]), tol=0.0)
    with pytest.raises(InvalidInputError):
        analyze(GateParams(2, [0.0]), tol=0.1)


def test_analyze_w_examples(caplog):
    assert analyze_w(SymmetricUnitary(3, np.eye(3))).is_maximal
    assert all(analyze_w(sample_symmetric_unitary(4, s)).is_maximal for s in range(100))
    w = sample_symmetric_unitary(3, 1).w.copy()
    w[0, 0] *= 1 + 1e-3
    assert not analyze_w(w, tol=1e-6).is_maximal
    with pytest.raises(InvalidInputError):
        SymmetricUnitary(3, w)


def test_analyze_w_entropy(rng):
    for n in (2, 3, 4, 5):
        r = analyze_w(sample_symmetric_unitary(n, int(rng.integers(10**6))))
        assert abs(r.entropy - np.log(n)) < 1e-9 and r.criteria_agree


@settings(max_examples=80, deadline=None)
@given(gate_params())
def test_report_invariants(p):
    r = analyze(p)
    assert r.criteria_agree
    assert 0 <= r.entropy <= r.max_entropy + 1e-9
    assert abs(r.flat_unitarity_residual - oracle_flat_residual(p)) < 1e-10
    # both reduced states are simultaneously proportional to I, or neither
    assert (r.reduced_residual_A <= 1e-9) == (r.reduced_residual_B <= 1e-9)
    assert abs(r.entropy - oracle_entropy(initial_state(build_full_gate(p)), p.n)) < 1e-9


def test_entropy_max_iff_maximal(rng):
    members = [m for n in (2, 3, 4) for _, _, m in catalog_members(n, n_free=3)]
    members += [random_params(rng, n) for n in range(2, 7) for _ in range(20)]
    for p in members:
        r = analyze(p)
        assert r.is_maximal == (abs(r.entropy - r.max_entropy) < 1e-8)


def test_analyze_gate_agrees_with_analyze(rng):
    for p in [GateParams(2, [PI / 4]), random_params(rng, 3)]:
        assert analyze_gate(build_full_gate(p)).is_maximal == analyze(p).is_maximal
    assert np.isnan(analyze_gate(np.eye(9)).flat_unitarity_residual)


def test_no_disagreement_warning(caplog):
    with caplog.at_level(logging.WARNING):
        analyze(GateParams(2, [PI / 4]))
        analyze_gate(np.eye(4))
    assert not caplog.records


def test_report_json_round_trip():
    r = analyze(GateParams(3, [0.3, 0.4]))
    assert EntanglementReport.from_dict(json.loads(json.dumps(r.to_dict()))) == r
