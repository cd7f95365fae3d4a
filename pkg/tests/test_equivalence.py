import numpy as np
import pytest

from elwgames.catalog import catalog, enumerate_n3
from elwgames.equivalence import compare_gates, gate_table, local_phase_factors
from elwgames.exceptions import InvalidInputError
from elwgames.gates import GateParams, SymmetricUnitary, build_flat_gate

PI = np.pi


def test_identical_gates():
    p = GateParams.from_pairs(3, [0.1, 0.2], [(1, 2, 0.3)])
    r = compare_gates(p, p)
    assert r.strict_equal and r.relabel_equivalent and r.max_outcome_difference == 0.0
    assert r.profiles_checked == 9 + 16


def test_same_table_mod_two_pi_is_strictly_equal():
    p = GateParams(2, [PI / 4])
    q = GateParams(2, [PI / 4 + 2 * PI])
    assert compare_gates(p, q).strict_equal


def test_n2_roots_are_relabellings():
    (fam,) = catalog(2)
    base = fam(k=0)
    for k in range(1, 4):
        r = compare_gates(base, fam(k=k))
        assert r.relabel_equivalent
        # λ + π flips every table entry's sign, a global phase
        assert r.strict_equal == (k == 2)


def test_diagonal_relabelling_of_catalog_gate(rng):
    p = enumerate_n3()[3].params
    t = build_flat_gate(p).entries
    a = np.exp(1j * rng.uniform(0, 2 * PI, 3))
    w = SymmetricUnitary(3, np.diag(a) @ t @ np.diag(a) / np.sqrt(3))
    r = compare_gates(p, w)
    assert r.relabel_equivalent and not r.strict_equal


def test_unrelated_gates(rng):
    p = enumerate_n3()[0].params
    q = GateParams.from_pairs(3, [0.4, 1.1], [(1, 2, 0.2)])
    r = compare_gates(p, q)
    assert not r.strict_equal and not r.relabel_equivalent


def test_local_phase_factors(rng):
    t = np.exp(1j * rng.uniform(0, 2 * PI, (4, 4)))
    a, b = np.exp(1j * rng.uniform(0, 2 * PI, 4)), np.exp(1j * rng.uniform(0, 2 * PI, 4))
    t2 = a[:, None] * t * b[None, :]
    fa, fb = local_phase_factors(t, t2)
    assert np.allclose(fa[:, None] * t * fb[None, :], t2)
    t3 = t2.copy()
    t3[2, 3] *= np.exp(0.1j)
    assert local_phase_factors(t, t3) is None
    # sparse tables (zeros allowed) split into components
    z = np.diag(np.exp(1j * rng.uniform(0, 2 * PI, 3)))
    assert local_phase_factors(z, np.diag([1, 1j, -1]) @ z) is not None


def test_errors():
    with pytest.raises(InvalidInputError):
        compare_gates(GateParams.zeros(2), GateParams.zeros(3))
    with pytest.raises(InvalidInputError):
        gate_table("nope")
