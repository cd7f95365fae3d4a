import itertools

import numpy as np
import pytest

from conftest import oracle_flat_residual
from elwgames.catalog import catalog, catalog_members, enumerate_n3, match_family, n4_families
from elwgames.entanglement import analyze
from elwgames.exceptions import UnsupportedError
from elwgames.gates import GateParams
from elwgames.phases import residuals, torus_distance

PI = np.pi

# Frozen from an independent brute force: every (λ₁, λ₂, μ₁₂) on the 2π/36
# and 2π/27 lattices, table built from the general matrix exponential,
# screened with (1/3)TT† = I.  Both lattices give the same 54 points.
N3_SOLUTION_COUNT = 54


def test_catalog_n2_roots():
    (fam,) = catalog(2)
    lams = sorted(float(p.lam[0]) for _, p in fam.grid())
    assert np.allclose(lams, [PI / 4, 3 * PI / 4, 5 * PI / 4, 7 * PI / 4])
    assert fam(k=0) == GateParams(2, [PI / 4])


def test_catalog_unsupported():
    for n in (1, 5, 6):
        with pytest.raises(UnsupportedError):
            catalog(n)


def test_enumerate_n3():
    sols = enumerate_n3()
    assert len(sols) == N3_SOLUTION_COUNT
    xs = [s.params.to_vector() for s in sols]
    for a, b in itertools.combinations(xs, 2):
        assert torus_distance(a, b) > 1e-6
    for s in sols:
        p = s.params
        assert residuals(p).max_residual < 1e-12
        assert oracle_flat_residual(p) < 1e-12
        # each pair's three phases are a permutation of {0, 2π/3, 4π/3}
        for trip in s.assignment:
            assert sorted(trip) == [0, 1, 2]


BRUTE_FORCE_LATTICE = 36


def test_enumerate_n3_matches_brute_force_lattice():
    from conftest import oracle_J_tilde

    sols = {tuple(int(v) * BRUTE_FORCE_LATTICE // s.denominator for v in s.numerators)
            for s in enumerate_n3()}
    assert all(s.denominator == 9 for s in enumerate_n3())
    found = set()
    step = 2 * PI / BRUTE_FORCE_LATTICE
    # screen a coarse sublattice with the oracle to keep the test quick
    for k in itertools.product(range(0, BRUTE_FORCE_LATTICE, 2), repeat=3):
        p = GateParams.from_pairs(3, [k[0] * step, k[1] * step], [(1, 2, k[2] * step)])
        t = np.diag(oracle_J_tilde(p)).reshape(3, 3)
        if np.max(np.abs(t @ t.conj().T / 3 - np.eye(3))) < 1e-9:
            found.add(k)
    assert found == {k for k in sols if all(v % 2 == 0 for v in k)}


def test_n3_discreteness():
    for s in enumerate_n3():
        x = s.params.to_vector()
        for d in (1e-3, -1e-3):
            y = x.copy()
            y[0] += d
            assert residuals(GateParams.from_vector(3, y)).max_residual > 1e-4


def test_n4_family_one_formulas():
    fams = {f.family_id: f for f in n4_families()}
    group1 = [f for f in fams.values() if f.group == 1]
    assert len(group1) == 4
    b = 0.8
    mu23_expected = [PI / 2, 3 * PI / 2, PI / 2 - 2 * b, 3 * PI / 2 - 2 * b]
    for f, m23 in zip(sorted(group1, key=lambda f: f.family_id), mu23_expected):
        p = f(beta=b, p=0)
        assert abs(p.mu[1, 2] - m23) < 1e-15
        assert abs(p.lam[1] - (2 * m23 - PI)) < 1e-15
        assert abs(p.mu[0, 1] - (m23 - PI)) < 1e-15
        assert abs(p.mu[0, 2] - (b + m23)) < 1e-15


def test_n4_six_groups():
    groups = {f.group for f in catalog(4)}
    assert groups == {1, 2, 3, 4, 5, 6}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_catalog_members_are_maximal(n):
    count = 0
    for fid, _, p in catalog_members(n, n_free=10):
        assert oracle_flat_residual(p) < 1e-9, fid
        assert analyze(p).is_maximal
        count += 1
    assert count > 0


def test_n4_family_continuity():
    betas = np.linspace(0, 2 * PI, 100, endpoint=False)
    for fam in catalog(4):
        for ints in itertools.product(*fam.integer_params.values()):
            kw = dict(zip(fam.integer_params, ints))
            worst = max(residuals(fam(beta=b, **kw)).max_residual for b in betas)
            assert worst < 1e-9, (fam.family_id, kw)


def test_match_family_round_trip():
    for fam in catalog(4):
        p = fam(beta=1.234, **{k: 1 for k in fam.integer_params})
        shifted = GateParams.from_vector(4, p.to_vector() + 2 * PI * np.array([1, -1, 0, 2, 0, -3]))
        hit = match_family(shifted)
        assert hit is not None
        fid, assignment = hit
        q = {f.family_id: f for f in catalog(4)}[fid](**assignment)
        assert torus_distance(q.to_vector(), p.to_vector()) < 1e-9
    assert match_family(GateParams.from_vector(4, [0.1] * 6)) is None


def test_describe_is_serializable():
    import json

    for n in (2, 3, 4):
        for fam in catalog(n):
            json.dumps(fam.describe())
