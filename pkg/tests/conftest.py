"""Shared independent oracles and hypothesis strategies.

The oracles deliberately avoid the package's own construction shortcuts:
the diagonal gate is formed from the full Hermitian exponent with a general
matrix exponential, and entropies come from Schmidt coefficients (SVD).
"""

import numpy as np
import pytest
import scipy.linalg
from hypothesis import strategies as st

from elwgames.gates import GateParams


def oracle_fourier(n):
    v = np.empty((n, n), complex)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            v[a - 1, b - 1] = np.exp(-2j * np.pi / n) ** ((a - 1) * (b - 1)) / np.sqrt(n)
    return v


def oracle_cartan(n):
    out = []
    for k in range(1, n):
        d = np.zeros(n)
        d[k - 1], d[k] = 1, -1
        out.append(np.diag(d))
    return out


def oracle_J_tilde(p: GateParams):
    """expm of the Hermitian exponent, μ summed over ordered pairs k ≠ l."""
    n = p.n
    lam_basis = oracle_cartan(n)
    h = np.zeros((n * n, n * n))
    for k in range(n - 1):
        h += p.lam[k] * np.kron(lam_basis[k], lam_basis[k])
        for l in range(n - 1):
            if k != l:
                sym = np.kron(lam_basis[k], lam_basis[l]) + np.kron(lam_basis[l], lam_basis[k])
                h += 0.5 * p.mu[k, l] * sym
    return scipy.linalg.expm(1j * h)


def oracle_full_gate(p: GateParams):
    vv = np.kron(oracle_fourier(p.n), oracle_fourier(p.n))
    return vv @ oracle_J_tilde(p) @ vv.conj().T


def oracle_entropy(psi, n):
    s = np.linalg.svd(np.asarray(psi).reshape(n, n), compute_uv=False) ** 2
    s = s[s > 1e-15]
    return float(-np.sum(s * np.log(s)))


def oracle_flat_residual(p: GateParams):
    t = np.diag(oracle_J_tilde(p)).reshape(p.n, p.n)
    return float(np.max(np.abs(t @ t.conj().T / p.n - np.eye(p.n))))


def random_params(rng, n):
    return GateParams.from_vector(n, rng.uniform(0, 2 * np.pi, n * (n - 1) // 2))


@st.composite
def gate_params(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_n, max_n))
    x = draw(st.lists(st.floats(-10, 10, allow_nan=False), min_size=n * (n - 1) // 2,
                      max_size=n * (n - 1) // 2))
    return GateParams.from_vector(n, x)


def haar_unitary(rng, n):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = z @ z.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
