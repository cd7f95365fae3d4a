"""Dense complex linear algebra on small bipartite systems.

Matrices are plain ``numpy`` arrays.  Composite indices of ``H ⊗ H`` are
Alice-major: basis vector ``|a⟩⊗|b⟩`` sits at position ``a * dim + b``,
which is exactly the layout produced by :func:`numpy.kron`.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidInputError

__all__ = [
    "tensor",
    "dagger",
    "basis_state",
    "partial_trace",
    "reduced_state",
    "entanglement_entropy",
    "is_unitary",
    "unitarity_residual",
    "expm_hermitian",
]

_NEG_EIG_TOL = 1e-12
_ZERO_EIG = 1e-14


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise InvalidInputError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    return a


def _square_dim(size: int, what: str) -> int:
    dim = int(round(np.sqrt(size)))
    if dim * dim != size or dim < 1:
        raise InvalidInputError(f"{what} of size {size} is not a perfect square")
    return dim


def tensor(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` with Alice-major composite indexing."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def dagger(m) -> np.ndarray:
    return np.asarray(m).conj().T


def basis_state(n: int, index: int = 0) -> np.ndarray:
    """Computational basis vector ``|index+1⟩`` of an ``n``-level system."""
    v = np.zeros(n, dtype=complex)
    v[index] = 1.0
    return v


def partial_trace(rho, dim: int, subsystem: str) -> np.ndarray:
    """Trace out one factor of a ``dim² × dim²`` bipartite density matrix.

    ``subsystem="B"`` sums over the second (Bob's) factor and returns Alice's
    reduced state; ``"A"`` sums over the first factor and returns Bob's.
    """
    rho = _as_matrix(rho)
    if rho.shape != (dim * dim, dim * dim):
        raise InvalidInputError(
            f"density matrix of shape {rho.shape} does not match dim={dim}"
        )
    r = rho.reshape(dim, dim, dim, dim)
    if subsystem == "B":
        return np.einsum("ajbj->ab", r)
    if subsystem == "A":
        return np.einsum("iaib->ab", r)
    raise InvalidInputError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def reduced_state(psi, dim: int, keep: str = "A") -> np.ndarray:
    """Reduced density matrix of a pure bipartite state without forming ``|ψ⟩⟨ψ|``.

    With ``C`` the ``dim × dim`` coefficient matrix of ``psi``, Alice's reduced
    state is ``C C†`` and Bob's is ``Cᵀ C̄``.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != dim * dim:
        raise InvalidInputError(f"state of size {psi.size} does not match dim={dim}")
    c = psi.reshape(dim, dim)
    if keep == "A":
        return c @ c.conj().T
    if keep == "B":
        return c.T @ c.conj()
    raise InvalidInputError(f"keep must be 'A' or 'B', got {keep!r}")


def entanglement_entropy(psi, dim: int) -> float:
    """Von Neumann entropy (nats) of Bob's reduced state of a pure state."""
    psi = np.asarray(psi, dtype=complex).ravel()
    _square_dim(psi.size, "state")
    if psi.size != dim * dim:
        raise InvalidInputError(f"state of size {psi.size} does not match dim={dim}")
    rho_b = reduced_state(psi, dim, keep="B")
    evals = np.linalg.eigvalsh((rho_b + rho_b.conj().T) / 2)
    if evals.min() < -_NEG_EIG_TOL:
        raise InvalidInputError(
            f"reduced state has eigenvalue {evals.min():.3e}; input is not a valid state"
        )
    evals = evals[evals > _ZERO_EIG]
    return float(max(0.0, -np.sum(evals * np.log(evals))))


def unitarity_residual(m) -> float:
    """``max |m m† - I|`` over all entries."""
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"matrix of shape {m.shape} is not square")
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


def is_unitary(m, tol: float = 1e-10) -> bool:
    return unitarity_residual(m) <= tol


def expm_hermitian(h) -> np.ndarray:
    """``exp(i h)`` for Hermitian ``h`` via its eigendecomposition."""
    h = _as_matrix(h)
    w, q = np.linalg.eigh((h + h.conj().T) / 2)
    return (q * np.exp(1j * w)) @ q.conj().T
