"""Gate construction for N-strategy ELW games.

The diagonal gate ``J̃`` is generated by tensor products of the Cartan
basis ``Λ_k = E_kk - E_{k+1,k+1}``; the game gate is its Fourier conjugate
``J = (V⊗V) J̃ (V†⊗V†)``.  Two independent routes to the diagonal of ``J̃``
are provided: :func:`build_J_tilde` exponentiates the Cartan-generator sum,
:func:`build_flat_gate` evaluates the closed-form phase of each entry.

Angles are 1-based in the formulas (``λ_1..λ_{N-1}``, ``μ_kl``) and stored
0-based; :meth:`GateParams.padded` is the one place the two meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .exceptions import InvalidInputError
from .linalg import dagger, tensor, unitarity_residual

__all__ = [
    "GateParams",
    "FlatGate",
    "SymmetricUnitary",
    "fourier_matrix",
    "cartan_basis",
    "flat_exponent",
    "build_flat_gate",
    "build_J_tilde",
    "build_full_gate",
    "conjugate_gate",
    "flat_gate_from_symmetric_unitary",
    "sample_symmetric_unitary",
    "takagi_symmetric_unitary",
    "w_route_gate",
    "relabel_gate",
    "frame_unitary",
    "n_params",
]


def n_params(n: int) -> int:
    """Number of free gate angles, ``C(n, 2)``."""
    return n * (n - 1) // 2


def _check_n(n) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 2:
        raise InvalidInputError(f"number of strategies must be an integer >= 2, got {n!r}")
    return int(n)


@dataclass(frozen=True, eq=False)
class GateParams:
    """Angles ``λ_k`` and ``μ_kl`` of the diagonal gate, in radians.

    ``lam`` has length ``n-1``; ``mu`` is a symmetric ``(n-1) × (n-1)``
    table whose diagonal is ignored (and stored as zero).
    """

    n: int
    lam: np.ndarray
    mu: np.ndarray = field(default=None)

    def __post_init__(self):
        n = _check_n(self.n)
        lam = np.array(self.lam, dtype=float).reshape(-1)
        if lam.shape != (n - 1,):
            raise InvalidInputError(f"expected {n - 1} lambda angles, got {lam.size}")
        if self.mu is None:
            mu = np.zeros((n - 1, n - 1))
        else:
            mu = np.array(self.mu, dtype=float)
            if mu.shape != (n - 1, n - 1):
                raise InvalidInputError(f"mu must be {n - 1}x{n - 1}, got {mu.shape}")
            if not np.array_equal(mu, mu.T):
                raise InvalidInputError("mu must be exactly symmetric")
            mu = mu.copy()
            np.fill_diagonal(mu, 0.0)
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(mu))):
            raise InvalidInputError("gate angles must be finite")
        lam.flags.writeable = False
        mu.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @classmethod
    def from_pairs(cls, n: int, lam, mu_pairs=()) -> "GateParams":
        """Build from ``lam`` and 1-based ``(k, l, value)`` triples with ``k < l``."""
        n = _check_n(n)
        mu = np.zeros((n - 1, n - 1))
        seen = set()
        for k, l, v in mu_pairs:
            k, l = int(k), int(l)
            if not (1 <= k < l <= n - 1):
                raise InvalidInputError(f"mu index ({k}, {l}) outside 1 <= k < l <= {n - 1}")
            if (k, l) in seen:
                raise InvalidInputError(f"duplicate mu entry ({k}, {l})")
            seen.add((k, l))
            mu[k - 1, l - 1] = mu[l - 1, k - 1] = float(v)
        return cls(n, lam, mu)

    @classmethod
    def from_vector(cls, n: int, x) -> "GateParams":
        """Inverse of :meth:`to_vector`."""
        n = _check_n(n)
        x = np.asarray(x, dtype=float).ravel()
        if x.size != n_params(n):
            raise InvalidInputError(f"expected {n_params(n)} parameters, got {x.size}")
        mu = np.zeros((n - 1, n - 1))
        iu = np.triu_indices(n - 1, k=1)
        mu[iu] = x[n - 1:]
        mu = mu + mu.T
        return cls(n, x[: n - 1], mu)

    @classmethod
    def zeros(cls, n: int) -> "GateParams":
        return cls(n, np.zeros(_check_n(n) - 1))

    def to_vector(self) -> np.ndarray:
        """``(λ_1, ..., λ_{n-1}, μ_12, μ_13, ..., μ_{n-2,n-1})``."""
        iu = np.triu_indices(self.n - 1, k=1)
        return np.concatenate([self.lam, self.mu[iu]])

    def mu_pairs(self) -> list[tuple[int, int, float]]:
        return [
            (k + 1, l + 1, float(self.mu[k, l]))
            for k, l in combinations(range(self.n - 1), 2)
        ]

    def padded(self) -> tuple[np.ndarray, np.ndarray]:
        """Angle tables with the boundary convention applied, indexable 1-based.

        Returns ``L`` of length ``n+1`` with ``L[0] = L[n] = 0`` and ``M`` of
        shape ``(n+1, n+1)`` vanishing on row/column 0 and ``n`` and on the
        diagonal, so ``L[k] = λ_k`` and ``M[k, l] = μ_kl`` for 1-based ``k, l``.
        """
        n = self.n
        L = np.zeros(n + 1)
        L[1:n] = self.lam
        M = np.zeros((n + 1, n + 1))
        M[1:n, 1:n] = self.mu
        return L, M

    def __eq__(self, other):
        if not isinstance(other, GateParams):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.lam, other.lam)
            and np.array_equal(self.mu, other.mu)
        )

    def __repr__(self):
        return f"GateParams(n={self.n}, lam={self.lam.tolist()}, mu={self.mu_pairs()})"


@dataclass(frozen=True, eq=False)
class FlatGate:
    """The ``n × n`` table of diagonal entries of ``J̃``; pure phases, symmetric."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (self.n, self.n):
            raise InvalidInputError(f"flat gate must be {self.n}x{self.n}, got {e.shape}")
        if np.max(np.abs(np.abs(e) - 1.0)) > 1e-12:
            raise InvalidInputError("flat gate entries must be unit-modulus phases")
        if np.max(np.abs(e - e.T)) > 1e-12:
            raise InvalidInputError("flat gate must be symmetric")
        e = e.copy()
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    def unitarity_residual(self) -> float:
        """``max |(1/n) J‿ J‿† - I|``; zero iff the game is maximally entangled."""
        return _scaled_residual(self.entries)


def _scaled_residual(table: np.ndarray) -> float:
    n = table.shape[0]
    return float(np.max(np.abs(table @ table.conj().T / n - np.eye(n))))


@dataclass(frozen=True, eq=False)
class SymmetricUnitary:
    """A unitary ``W`` with ``W = Wᵀ``; validated at construction.

    ``seed`` records the sampler seed when ``W`` came from
    :func:`sample_symmetric_unitary`.
    """

    n: int
    w: np.ndarray
    tol: float = 1e-10
    seed: int | None = None

    def __post_init__(self):
        _check_n(self.n)
        w = np.asarray(self.w, dtype=complex)
        if w.shape != (self.n, self.n):
            raise InvalidInputError(f"W must be {self.n}x{self.n}, got {w.shape}")
        if not np.all(np.isfinite(w)):
            raise InvalidInputError("W has non-finite entries")
        asym = float(np.max(np.abs(w - w.T)))
        if asym > self.tol:
            raise InvalidInputError(f"W is not symmetric (max |W - Wᵀ| = {asym:.3e})")
        res = unitarity_residual(w)
        if res > self.tol:
            raise InvalidInputError(f"W is not unitary (residual {res:.3e})")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "w", w)


def fourier_matrix(n: int) -> np.ndarray:
    """``V_{αβ} = conj(ε)^{(α-1)(β-1)} / √n`` with ``ε = exp(2πi/n)``."""
    n = _check_n(n)
    k = np.arange(n)
    # reduce the exponent mod n so entries are exact roots of unity
    return np.exp(-2j * np.pi * (np.outer(k, k) % n) / n) / np.sqrt(n)


def cartan_basis(n: int) -> list[np.ndarray]:
    """Diagonal traceless basis ``Λ_k = E_kk - E_{k+1,k+1}``, ``k = 1..n-1``."""
    n = _check_n(n)
    basis = []
    for k in range(n - 1):
        d = np.zeros(n)
        d[k], d[k + 1] = 1.0, -1.0
        basis.append(np.diag(d))
    return basis


def flat_exponent(p: GateParams) -> np.ndarray:
    """Real phase table ``θ_{αβ}`` with ``J‿_{αβ} = exp(i θ_{αβ})``."""
    n = p.n
    L, M = p.padded()
    a = np.arange(1, n + 1)
    theta = (
        np.diag(L[a] + L[a - 1])
        - np.diag(L[1:n], k=1)          # -λ_α δ_{α+1,β}
        - np.diag(L[1:n], k=-1)         # -λ_{α-1} δ_{α,β+1}
        + M[1:, 1:] + M[:-1, :-1] - M[:-1, 1:] - M[1:, :-1]
    )
    return theta


def build_flat_gate(p: GateParams) -> FlatGate:
    return FlatGate(p.n, np.exp(1j * flat_exponent(p)))


def build_J_tilde(p: GateParams) -> np.ndarray:
    """``J̃ = exp(i Σ λ_k Λ_k⊗Λ_k + i Σ_{k<l} μ_kl (Λ_k⊗Λ_l + Λ_l⊗Λ_k))``.

    Every generator is diagonal, so the exponential is taken entrywise on the
    diagonal of the exponent.
    """
    diags = [np.diag(b) for b in cartan_basis(p.n)]
    expo = np.zeros(p.n * p.n)
    for k, dk in enumerate(diags):
        expo += p.lam[k] * np.kron(dk, dk)
    for k, l in combinations(range(p.n - 1), 2):
        expo += p.mu[k, l] * (np.kron(diags[k], diags[l]) + np.kron(diags[l], diags[k]))
    return np.diag(np.exp(1j * expo))


def conjugate_gate(jt) -> np.ndarray:
    """Fourier-frame conjugation ``(V⊗V) jt (V†⊗V†)``."""
    jt = np.asarray(jt, dtype=complex)
    n = int(round(np.sqrt(jt.shape[0])))
    if jt.shape != (n * n, n * n):
        raise InvalidInputError(f"gate of shape {jt.shape} is not N²×N²")
    vv = tensor(fourier_matrix(n), fourier_matrix(n))
    return vv @ jt @ dagger(vv)


def build_full_gate(p: GateParams) -> np.ndarray:
    """The game gate ``J = (V⊗V) J̃ (V†⊗V†)``."""
    return conjugate_gate(build_J_tilde(p))


def flat_gate_from_symmetric_unitary(w: SymmetricUnitary) -> np.ndarray:
    """Gate table ``√N W`` of the symmetric-unitary construction.

    Unlike :class:`FlatGate` the entries need not be unit-modulus, so the
    table is returned as a bare array.
    """
    if not isinstance(w, SymmetricUnitary):
        w = SymmetricUnitary(np.asarray(w).shape[0], w)
    return np.sqrt(w.n) * np.asarray(w.w)


def sample_symmetric_unitary(n: int, seed: int) -> SymmetricUnitary:
    """``W = exp(iS)`` with the ``n(n+1)/2`` free entries of real symmetric ``S``
    drawn from a standard normal seeded by ``seed``."""
    n = _check_n(n)
    rng = np.random.default_rng(seed)
    s = np.zeros((n, n))
    iu = np.triu_indices(n)
    s[iu] = rng.standard_normal(iu[0].size)
    s = s + np.triu(s, 1).T
    return SymmetricUnitary(n, _exp_i_real_symmetric(s), seed=int(seed))


def _exp_i_real_symmetric(s: np.ndarray) -> np.ndarray:
    w, q = np.linalg.eigh(s)
    out = (q * np.exp(1j * w)) @ q.T
    return (out + out.T) / 2  # exact transpose symmetry


def takagi_symmetric_unitary(w, tol: float = 1e-9) -> np.ndarray:
    """Unitary ``U`` with ``U Uᵀ = W`` for a symmetric unitary ``W``.

    ``Re W`` and ``Im W`` are commuting real symmetric matrices, so a generic
    real combination of them has an orthogonal eigenbasis ``Q`` that
    diagonalizes ``W = Q e^{iΘ} Qᵀ``; then ``U = Q e^{iΘ/2}``.
    """
    w = np.asarray(w.w if isinstance(w, SymmetricUnitary) else w, dtype=complex)
    rng = np.random.default_rng(0)
    for t in np.concatenate([[0.5 * (np.sqrt(5) - 1)], rng.uniform(-2, 2, 16)]):
        _, q = np.linalg.eigh(w.real + t * w.imag)
        d = q.T @ w @ q
        if np.max(np.abs(d - np.diag(np.diag(d)))) <= tol:
            u = q * np.exp(0.5j * np.angle(np.diag(d)))
            if np.max(np.abs(u @ u.T - w)) <= tol:
                return u
    raise InvalidInputError("could not factor W as U Uᵀ; is it a symmetric unitary?")


def w_route_gate(w: SymmetricUnitary, tol: float = 1e-10) -> np.ndarray:
    """A unitary game gate whose initial state is the one fixed by ``√N W``.

    When every entry of ``√N W`` is a phase, this is exactly
    ``(V⊗V) diag(√N W) (V†⊗V†)``.  Otherwise that matrix is not unitary, and
    the gate is built as ``(L⊗L) J_F`` where ``J_F`` is the Fourier-table gate
    (``√N V`` is a symmetric unitary table of phases) and the local unitary
    ``L = V U U_F† V†`` comes from Takagi factors ``W = U Uᵀ``, ``V = U_F U_Fᵀ``.
    The result is a relabelling of the ``J_F`` game with the same ``J|11⟩``.
    """
    table = flat_gate_from_symmetric_unitary(w)
    n = w.n
    if np.max(np.abs(np.abs(table) - 1.0)) <= tol:
        return conjugate_gate(np.diag(table.ravel()))
    v = fourier_matrix(n)
    j_f = conjugate_gate(np.diag(np.sqrt(n) * v.ravel()))
    u = takagi_symmetric_unitary(w.w)
    u_f = takagi_symmetric_unitary(v)
    loc = v @ u @ dagger(u_f) @ dagger(v)
    return tensor(loc, loc) @ j_f


def frame_unitary(j_local) -> np.ndarray:
    """Lift a local factor of ``J̃`` to the game frame: ``V j V†``."""
    j_local = np.asarray(j_local, dtype=complex)
    v = fourier_matrix(j_local.shape[0])
    return v @ j_local @ dagger(v)


def relabel_gate(jt, ja, jb) -> np.ndarray:
    """``(ja ⊗ jb) jt``: the diagonal gate multiplied by local factors.

    Playing with the conjugated gate ``conjugate_gate(relabel_gate(jt, ja, jb))``
    and strategies ``A U_A A†``, ``B U_B B†`` (``A = frame_unitary(ja)``, etc.)
    reproduces the original game exactly.
    """
    jt = np.asarray(jt, dtype=complex)
    ja = np.asarray(ja, dtype=complex)
    jb = np.asarray(jb, dtype=complex)
    if ja.ndim != 2 or jb.ndim != 2 or ja.shape[0] != ja.shape[1] or jb.shape != ja.shape:
        raise InvalidInputError("local factors must be square matrices of equal size")
    n = ja.shape[0]
    if jt.shape != (n * n, n * n):
        raise InvalidInputError(f"gate of shape {jt.shape} does not match local size {n}")
    for name, m in (("ja", ja), ("jb", jb), ("jt", jt)):
        if unitarity_residual(m) > 1e-8:
            raise InvalidInputError(f"{name} is not unitary")
    return tensor(ja, jb) @ jt
