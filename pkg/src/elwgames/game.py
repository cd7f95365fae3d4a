"""Playing the quantum game: strategies, outcomes, and best-response searches.

A pure state of the composite system is handled through its ``N × N``
coefficient matrix ``C`` (``ψ = vec(C)`` row-major), so local moves act as
``(A ⊗ B) vec(C) = vec(A C Bᵀ)`` and never need an ``N² × N²`` product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
import scipy.linalg
from scipy.optimize import minimize

from .entanglement import DEFAULT_TOL, analyze_gate
from .exceptions import InvalidInputError, PreconditionError, SearchFailureError
from .gates import (
    GateParams,
    SymmetricUnitary,
    build_full_gate,
    fourier_matrix,
    frame_unitary,
    w_route_gate,
)
from .linalg import unitarity_residual

__all__ = [
    "gellmann_basis",
    "Strategy",
    "classical_strategy",
    "random_strategy",
    "relabel_strategy",
    "GameSpec",
    "Outcome",
    "play",
    "counterstrategy",
    "DeviationReport",
    "pure_nash_probe",
    "prisoners_dilemma",
    "PRISONERS_DILEMMA",
]

DEFAULT_RESTARTS = 32
DEFAULT_MAXITER = 500
GRAD_TOL = 1e-10
EQUILIBRIUM_THRESHOLD = 1e-3
COUNTER_THRESHOLD = 1e-6


@lru_cache(maxsize=None)
def gellmann_basis(n: int) -> np.ndarray:
    """Generalized Gell-Mann matrices, shape ``(n²-1, n, n)``, ``Tr(G_a G_b) = 2δ_ab``.

    Ordering: symmetric off-diagonal pairs, antisymmetric pairs, then diagonal.
    """
    sym, asym, diag = [], [], []
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), complex)
            s[j, k] = s[k, j] = 1.0
            sym.append(s)
            a = np.zeros((n, n), complex)
            a[j, k], a[k, j] = -1j, 1j
            asym.append(a)
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -l
        diag.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * d).astype(complex))
    out = np.array(sym + asym + diag)
    out.flags.writeable = False
    return out


def _hermitian(n: int, coords) -> np.ndarray:
    return np.tensordot(np.asarray(coords, dtype=float), gellmann_basis(n), axes=1)


def _exp_and_derivatives(n: int, coords):
    """``U = exp(iH(coords))`` and ``∂U/∂coords_j`` for every generator.

    Uses the divided-difference form of the derivative of a matrix function:
    ``dU[E] = Q (F ∘ Q†EQ) Q†`` with ``F_ab = (e^{iw_a} - e^{iw_b}) / (w_a - w_b)``,
    written as ``i e^{i(w_a+w_b)/2} sinc`` so equal eigenvalues need no branch.
    """
    w, q = np.linalg.eigh(_hermitian(n, coords))
    u = (q * np.exp(1j * w)) @ q.conj().T
    diff = w[:, None] - w[None, :]
    f = 1j * np.exp(0.5j * (w[:, None] + w[None, :])) * np.sinc(diff / (2 * np.pi))
    g = np.einsum("ia,kij,jb->kab", q.conj(), gellmann_basis(n), q)
    du = np.einsum("ia,kab,jb->kij", q, f * g, q.conj())
    return u, du


def _exp_and_linear_gradient(n: int, coords, m: np.ndarray):
    """``U`` and ``∂/∂coords_j Σ m ∘ U`` without materializing every ``∂U``.

    ``Σ m ∘ Q(F ∘ G̃_j)Q† = Σ R ∘ F ∘ G̃_j`` with ``R = (Q† mᵀ Q)ᵀ`` and
    ``G̃_j = Q† G_j Q``.
    """
    w, q = np.linalg.eigh(_hermitian(n, coords))
    u = (q * np.exp(1j * w)) @ q.conj().T
    diff = w[:, None] - w[None, :]
    f = 1j * np.exp(0.5j * (w[:, None] + w[None, :])) * np.sinc(diff / (2 * np.pi))
    qh = q.conj().T
    r = (qh @ m.T @ q).T
    g = qh @ gellmann_basis(n) @ q
    return u, g.reshape(len(g), -1) @ (r * f).ravel()


def _to_special(u: np.ndarray) -> np.ndarray:
    det = np.linalg.det(u)
    return u * np.exp(-1j * np.angle(det) / u.shape[0])


@dataclass(frozen=True, eq=False)
class Strategy:
    """A move ``U = exp(i Σ c_j G_j) ∈ SU(N)`` with ``G_j`` from :func:`gellmann_basis`."""

    n: int
    coords: np.ndarray
    unitary: np.ndarray = field(repr=False)

    @classmethod
    def from_coords(cls, n: int, coords) -> "Strategy":
        coords = np.array(coords, dtype=float).ravel()
        if coords.size != n * n - 1:
            raise InvalidInputError(f"expected {n * n - 1} coordinates, got {coords.size}")
        w, q = np.linalg.eigh(_hermitian(n, coords))
        return cls(n, coords, (q * np.exp(1j * w)) @ q.conj().T)

    @classmethod
    def from_unitary(cls, u) -> "Strategy":
        """Wrap any unitary, projected to unit determinant, with matching coordinates."""
        u = np.asarray(u, dtype=complex)
        n = u.shape[0]
        if u.shape != (n, n) or unitarity_residual(u) > 1e-8:
            raise InvalidInputError("strategy must be a square unitary matrix")
        u = _to_special(u)
        t, z = scipy.linalg.schur(u, output="complex")
        theta = np.angle(np.diag(t))
        # det = 1 makes Σθ a multiple of 2π; move it onto one eigenphase so H is traceless
        theta[np.argmax(theta)] -= 2 * np.pi * np.round(theta.sum() / (2 * np.pi))
        h = (z * theta) @ z.conj().T
        coords = 0.5 * np.real(np.einsum("kij,ji->k", gellmann_basis(n), h))
        return cls(n, coords, u)

    @classmethod
    def identity(cls, n: int) -> "Strategy":
        return cls.from_coords(n, np.zeros(n * n - 1))


def classical_strategy(n: int, k: int) -> Strategy:
    """The cyclic shift ``|σ⟩ → |σ+k mod N⟩``, i.e. ``V diag(ε^{k(β-1)}) V†``.

    The phase is fixed so the determinant is 1; outcomes do not depend on it.
    """
    if not (0 <= k < n):
        raise InvalidInputError(f"classical strategy index must be in [0, {n - 1}], got {k}")
    v = fourier_matrix(n)
    eps = np.exp(2j * np.pi * k * np.arange(n) / n)
    return Strategy.from_unitary(v @ np.diag(eps) @ v.conj().T)


def random_strategy(n: int, rng: np.random.Generator, scale: float = np.pi) -> Strategy:
    return Strategy.from_coords(n, rng.uniform(-scale, scale, n * n - 1))


def relabel_strategy(s: Strategy, j_local) -> Strategy:
    """``A U A†`` with ``A = V j_local V†``: the move that plays the same in the
    relabelled game as ``s`` does in the original."""
    a = frame_unitary(j_local)
    return Strategy.from_unitary(a @ s.unitary @ a.conj().T)


@dataclass(frozen=True, eq=False)
class GameSpec:
    """Payoff tables (Alice-major ``P[σ, σ']``) together with the gate choice."""

    n: int
    payoff_a: np.ndarray
    payoff_b: np.ndarray
    gate_params: GateParams | SymmetricUnitary | None = None
    require_maximal: bool = False
    gate_override: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("payoff_a", "payoff_b"):
            m = np.array(getattr(self, name), dtype=float)
            if m.size == self.n * self.n and m.ndim == 1:
                m = m.reshape(self.n, self.n)
            if m.shape != (self.n, self.n):
                raise InvalidInputError(f"{name} must be {self.n}x{self.n}, got {m.shape}")
            if not np.all(np.isfinite(m)):
                raise InvalidInputError(f"{name} has non-finite entries")
            m.flags.writeable = False
            object.__setattr__(self, name, m)
        if self.gate_params is None and self.gate_override is None:
            object.__setattr__(self, "gate_params", GateParams.zeros(self.n))
        if self.gate_params is not None and self.gate_params.n != self.n:
            raise InvalidInputError("gate size does not match the number of strategies")

    @cached_property
    def gate(self) -> np.ndarray:
        if self.gate_override is not None:
            g = np.asarray(self.gate_override, dtype=complex)
            if g.shape != (self.n ** 2, self.n ** 2) or unitarity_residual(g) > 1e-8:
                raise InvalidInputError("gate override must be an N²×N² unitary")
            return g
        if isinstance(self.gate_params, SymmetricUnitary):
            return w_route_gate(self.gate_params)
        return build_full_gate(self.gate_params)

    @cached_property
    def initial_coefficients(self) -> np.ndarray:
        return self.gate[:, 0].reshape(self.n, self.n)

    def is_maximal(self, tol: float = DEFAULT_TOL) -> bool:
        return analyze_gate(self.gate, tol).is_maximal

    def with_gate(self, gate_params) -> "GameSpec":
        return GameSpec(self.n, self.payoff_a, self.payoff_b, gate_params, self.require_maximal)


@dataclass(frozen=True)
class Outcome:
    probabilities: np.ndarray
    payoff_a: float
    payoff_b: float

    def to_dict(self) -> dict:
        return {
            "probabilities": self.probabilities.tolist(),
            "payoff_a": self.payoff_a,
            "payoff_b": self.payoff_b,
        }


def _final_state(spec: GameSpec, ua: np.ndarray, ub: np.ndarray) -> np.ndarray:
    moved = ua @ spec.initial_coefficients @ ub.T
    return spec.gate.conj().T @ moved.ravel()


def _check_profile(spec: GameSpec, *strategies: Strategy):
    for s in strategies:
        if s.n != spec.n:
            raise InvalidInputError(f"strategy of size {s.n} in a game with n={spec.n}")


def play(spec: GameSpec, ua: Strategy, ub: Strategy) -> Outcome:
    """Final measurement statistics of ``J†(U_A⊗U_B)J|11⟩`` and expected payoffs."""
    _check_profile(spec, ua, ub)
    if spec.require_maximal and not spec.is_maximal():
        raise PreconditionError("game requires a maximally entangling gate")
    psi = _final_state(spec, ua.unitary, ub.unitary)
    prob = (np.abs(psi) ** 2).reshape(spec.n, spec.n)
    return Outcome(
        probabilities=prob,
        payoff_a=float(np.sum(spec.payoff_a * prob)),
        payoff_b=float(np.sum(spec.payoff_b * prob)),
    )


def _swap_players(spec: GameSpec) -> GameSpec:
    # The exchange operator commutes with every gate in the family, so the
    # swapped game uses the same gate with transposed, exchanged tables.
    swap = np.eye(spec.n ** 2)[[b * spec.n + a for a in range(spec.n) for b in range(spec.n)]]
    return GameSpec(spec.n, spec.payoff_b.T, spec.payoff_a.T, None, spec.require_maximal,
                    gate_override=swap @ spec.gate @ swap)


def counterstrategy(
    spec: GameSpec,
    ua: Strategy,
    target: tuple[int, int],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    maxiter: int = DEFAULT_MAXITER,
    player: str = "B",
) -> Strategy:
    """Reply that makes the 1-based outcome ``target`` certain against ``ua``.

    ``player="B"`` (default) searches Bob's reply to Alice's move ``ua``;
    ``player="A"`` searches Alice's reply to Bob's move.  The search is BFGS
    on ``1 - P(target)`` with exact gradients, from the identity and then
    seeded random starts.
    """
    if player == "A":
        return counterstrategy(_swap_players(spec), ua, (target[1], target[0]),
                               seed, restarts, maxiter, "B")
    if player != "B":
        raise InvalidInputError(f"player must be 'A' or 'B', got {player!r}")
    _check_profile(spec, ua)
    n = spec.n
    sa, sb = target
    if not (1 <= sa <= n and 1 <= sb <= n):
        raise InvalidInputError(f"target {target} outside 1..{n}")
    if not spec.is_maximal(DEFAULT_TOL):
        raise PreconditionError("counterstrategies are only guaranteed for maximally entangled games")

    # target amplitude ⟨J t|(U_A ⊗ U)|Ψ_i⟩ = Σ_bc (Tᵀ U_A C)_bc U_bc, linear in U
    t = spec.gate[:, (sa - 1) * n + (sb - 1)].reshape(n, n).conj()
    m = t.T @ ua.unitary @ spec.initial_coefficients

    def loss(x):
        u, damp = _exp_and_linear_gradient(n, x, m)
        amp = np.sum(m * u)
        return 1.0 - abs(amp) ** 2, -2.0 * np.real(np.conj(amp) * damp)

    rng = np.random.default_rng(seed)
    best_p, best_x = -1.0, None
    for r in range(restarts):
        x0 = np.zeros(n * n - 1) if r == 0 else rng.uniform(-np.pi, np.pi, n * n - 1)
        res = minimize(loss, x0, jac=True, method="BFGS",
                       options={"gtol": GRAD_TOL, "maxiter": maxiter})
        p = 1.0 - loss(res.x)[0]
        if p > best_p:
            best_p, best_x = p, res.x
        if best_p >= 1.0 - COUNTER_THRESHOLD:
            return Strategy.from_coords(n, best_x)
    raise SearchFailureError(
        f"best target probability {best_p:.9f} after {restarts} restarts"
    )


@dataclass(frozen=True)
class DeviationReport:
    """Best unilateral payoff gains found from a profile."""

    payoff_a: float
    payoff_b: float
    delta_a: float
    delta_b: float
    best_a: np.ndarray = field(repr=False)
    best_b: np.ndarray = field(repr=False)
    threshold: float = EQUILIBRIUM_THRESHOLD

    @property
    def is_equilibrium(self) -> bool:
        return max(self.delta_a, self.delta_b) <= self.threshold

    def to_dict(self) -> dict:
        return {
            "payoff_a": self.payoff_a,
            "payoff_b": self.payoff_b,
            "delta_a": self.delta_a,
            "delta_b": self.delta_b,
            "best_response_a": self.best_a.tolist(),
            "best_response_b": self.best_b.tolist(),
            "threshold": self.threshold,
            "is_equilibrium": self.is_equilibrium,
        }


def _best_response(spec: GameSpec, own: Strategy, other: Strategy, rng, restarts, maxiter):
    """Maximize Alice's payoff over her move with Bob's fixed."""
    n = spec.n
    c = spec.initial_coefficients
    jd = spec.gate.conj().T
    payoff = spec.payoff_a.ravel()
    right = c @ other.unitary.T

    def loss(x):
        u, du = _exp_and_derivatives(n, x)
        psi = jd @ (u @ right).ravel()
        dpsi = (du @ right).reshape(len(du), -1) @ jd.T
        val = np.sum(payoff * np.abs(psi) ** 2)
        grad = 2.0 * np.real(dpsi @ (payoff * psi.conj()))
        return -val, -grad

    base = float(-loss(own.coords)[0])
    best_val, best_x = base, own.coords
    for r in range(restarts):
        x0 = own.coords if r == 0 else rng.uniform(-np.pi, np.pi, n * n - 1)
        res = minimize(loss, x0, jac=True, method="BFGS",
                       options={"gtol": GRAD_TOL, "maxiter": maxiter})
        val = float(-loss(res.x)[0])
        if val > best_val:
            best_val, best_x = val, res.x
    return base, best_val - base, np.asarray(best_x)


def pure_nash_probe(
    spec: GameSpec,
    profile: tuple[Strategy, Strategy],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    maxiter: int = DEFAULT_MAXITER,
) -> DeviationReport:
    """Search each player's unilateral deviations from ``profile``.

    Gains are measured against the profile's own payoff and are never
    negative: the profile itself is the first start of each search.
    """
    ua, ub = profile
    _check_profile(spec, ua, ub)
    rng = np.random.default_rng(seed)
    pa, da, xa = _best_response(spec, ua, ub, rng, restarts, maxiter)
    pb, db, xb = _best_response(_swap_players(spec), ub, ua, rng, restarts, maxiter)
    return DeviationReport(pa, pb, da, db, xa, xb)


PRISONERS_DILEMMA = (
    np.array([[3.0, 0.0], [5.0, 1.0]]),
    np.array([[3.0, 5.0], [0.0, 1.0]]),
)


def prisoners_dilemma(gate_params=None) -> GameSpec:
    """Prisoner's Dilemma with strategy 1 = cooperate, 2 = defect."""
    a, b = PRISONERS_DILEMMA
    return GameSpec(2, a, b, gate_params)
