import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gate_params, oracle_J_tilde, random_params
from elwgames.entanglement import analyze
from elwgames.exceptions import InvalidInputError
from elwgames.gates import GateParams
from elwgames.phases import (
    fold,
    four_phase_parametrize,
    objective,
    objective_and_gradient,
    pairs,
    phase_coefficients,
    phi,
    residuals,
    torus_distance,
)

PI = np.pi


def test_fold_and_distance():
    assert fold(PI) == PI and fold(-PI) == PI
    assert abs(fold(3 * PI / 2) + PI / 2) < 1e-15
    assert torus_distance([0.0, 2 * PI], [2 * PI - 1e-9, 0.0]) < 2e-9


def test_phi_examples():
    lam = 0.37
    p = GateParams(2, [lam])
    assert abs(phi(p, 1, 2, 1) - 2 * lam) < 1e-15
    assert abs(phi(p, 1, 2, 2) + 2 * lam) < 1e-15
    z = GateParams.zeros(5)
    assert all(phi(z, a, g, b) == 0 for a, g in pairs(5) for b in range(1, 6))
    p4 = GateParams.from_pairs(4, [0.3, 0.5, 0.7], [(1, 2, 0.11), (1, 3, 0.13), (2, 3, 0.17)])
    assert abs(phi(p4, 1, 2, 1) - (2 * 0.3 - 0.11)) < 1e-15


def test_phi_index_errors():
    p = GateParams.zeros(3)
    for idx in [(2, 1, 1), (1, 4, 1), (0, 2, 1), (1, 2, 0), (1, 2, 4)]:
        with pytest.raises(InvalidInputError):
            phi(p, *idx)


@settings(max_examples=60, deadline=None)
@given(gate_params())
def test_phi_matches_J_tilde_phases(p):
    # e^{iφ} must equal the ratio of table entries from the general-expm oracle
    t = np.diag(oracle_J_tilde(p)).reshape(p.n, p.n)
    for a, g in pairs(p.n):
        for b in range(1, p.n + 1):
            assert abs(np.exp(1j * phi(p, a, g, b)) - t[a - 1, b - 1] / t[g - 1, b - 1]) < 1e-10


@settings(max_examples=100, deadline=None)
@given(gate_params())
def test_residual_invariants(p):
    r = residuals(p)
    assert len(r.residuals) == p.n * (p.n - 1) // 2
    assert np.all(np.abs(r.residuals) <= p.n + 1e-12)
    assert r.max_sum_defect < 1e-9
    direct = [sum(np.exp(1j * phi(p, a, g, b)) for b in range(1, p.n + 1)) for a, g in pairs(p.n)]
    assert np.allclose(r.residuals, direct, atol=1e-10)


def test_residual_examples():
    assert residuals(GateParams(2, [PI / 4])).max_residual < 1e-12
    assert abs(residuals(GateParams(2, [0.0])).max_residual - 2) < 1e-15
    b, p, q = 1.0, 1, 0
    f5 = GateParams.from_pairs(
        4, [b + PI * p + PI * q, PI / 2 * q, b + PI * p],
        [(1, 2, 3 * PI / 4 * q + PI), (1, 3, b + PI / 4 * q), (2, 3, PI / 4 * q)])
    assert np.all(np.abs(residuals(f5).residuals) < 1e-10)


def test_residual_iff_maximal(rng):
    from elwgames.catalog import catalog_members

    pts = [m for n in (2, 3, 4) for _, _, m in catalog_members(n, n_free=4)]
    pts += [random_params(rng, int(rng.integers(2, 7))) for _ in range(500)]
    for p in pts:
        assert (residuals(p).max_residual < 1e-9) == analyze(p).is_maximal


def test_phase_coefficients_reproduce_phi(rng):
    for n in (2, 3, 4, 5, 6):
        p = random_params(rng, n)
        c = phase_coefficients(n)
        assert c.dtype.kind == "i"
        x = p.to_vector()
        for i, (a, g) in enumerate(pairs(n)):
            for b in range(n):
                assert abs(c[i, b] @ x - phi(p, a, g, b + 1)) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gradient_matches_central_differences(rng, n):
    h = 1e-6
    for _ in range(25):
        x = rng.uniform(0, 2 * PI, n * (n - 1) // 2)
        f, g = objective_and_gradient(n, x)
        assert abs(f - objective(n, x)) < 1e-12
        fd = np.array([(objective(n, x + h * e) - objective(n, x - h * e)) / (2 * h)
                       for e in np.eye(x.size)])
        assert np.linalg.norm(g - fd) <= 1e-5 * max(np.linalg.norm(fd), 1e-8)


def test_four_phase_examples():
    ph = four_phase_parametrize(0.0, 0, 0)
    assert np.allclose(ph, (0, 0, PI, PI))
    assert abs(sum(np.exp(1j * np.array(ph)))) < 1e-15
    ph = four_phase_parametrize(0.7, 1, 2)
    assert abs(sum(np.exp(1j * np.array(ph)))) < 1e-12


@settings(max_examples=100)
@given(st.floats(-20, 20), st.integers(-5, 5), st.integers(-5, 5))
def test_four_phase_properties(phi1, m, k):
    ph = np.array(four_phase_parametrize(phi1, m, k))
    assert abs(np.exp(1j * ph).sum()) < 1e-12
    assert abs(ph.sum() - 2 * (2 * m + k + 1) * PI) < 1e-9
