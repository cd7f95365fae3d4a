"""Closed-form solutions of the maximal-entanglement conditions for N = 2, 3, 4.

* N = 2: ``λ = π/4 + kπ/2``; the four roots of ``e^{4iλ} = -1`` mod 2π.
* N = 3: a finite set, found exactly by :func:`enumerate_n3`.
* N = 4: six one-parameter families in ``β`` with integer shifts ``p, q``.
  Families 1-4 come with four admissible ``μ₂₃`` values each; every value is
  its own sub-family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import UnsupportedError
from .gates import GateParams
from .phases import phase_coefficients, torus_distance

__all__ = [
    "SolutionFamily",
    "N3Solution",
    "catalog",
    "enumerate_n3",
    "n4_families",
    "match_family",
    "catalog_members",
]

PI = np.pi


@dataclass(frozen=True)
class SolutionFamily:
    """A parametrized set of gates satisfying the maximality conditions.

    ``free_params`` maps each real parameter to its sampling domain and
    ``integer_params`` maps each integer parameter to the range exercised by
    :meth:`grid`.  ``formulas`` is a human-readable rendering of ``binding``.
    """

    n: int
    family_id: str
    binding: Callable[..., GateParams] = field(repr=False)
    free_params: dict = field(default_factory=dict)
    integer_params: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)
    group: int | None = None

    def __call__(self, **values) -> GateParams:
        return self.binding(**values)

    def grid(self, n_free: int = 25, integer_ranges: dict | None = None):
        """Yield ``(assignment, GateParams)`` over a tensor grid of parameter values."""
        ints = dict(self.integer_params)
        if integer_ranges:
            ints.update({k: v for k, v in integer_ranges.items() if k in ints})
        axes = {}
        for name, (lo, hi) in self.free_params.items():
            axes[name] = np.linspace(lo, hi, n_free, endpoint=False)
        for name, rng in ints.items():
            axes[name] = list(rng)
        names = list(axes)
        for combo in itertools.product(*(axes[k] for k in names)):
            values = dict(zip(names, combo))
            yield values, self.binding(**values)

    def describe(self) -> dict:
        return {
            "family_id": self.family_id,
            "group": self.group,
            "n": self.n,
            "free_params": {k: list(v) for k, v in self.free_params.items()},
            "integer_params": {k: [min(v), max(v)] for k, v in self.integer_params.items()},
            "formulas": dict(self.formulas),
        }


# ---------------------------------------------------------------- N = 2

def _n2_family() -> SolutionFamily:
    return SolutionFamily(
        n=2,
        family_id="n2",
        binding=lambda k=0: GateParams(2, [PI / 4 + k * PI / 2]),
        integer_params={"k": range(4)},
        formulas={"lambda1": "pi/4 + k*pi/2", "representative": "k = 0 (lambda1 = pi/4)"},
    )


# ---------------------------------------------------------------- N = 3

@dataclass(frozen=True)
class N3Solution:
    """One exact N = 3 solution: angles ``2π·k/denominator`` and the phase
    assignment (in thirds of 2π) it realizes for each pair ``(α, γ)``."""

    numerators: tuple[int, int, int]
    denominator: int
    assignment: tuple[tuple[int, int, int], ...]

    @property
    def params(self) -> GateParams:
        lam1, lam2, mu12 = (2 * PI * k / self.denominator for k in self.numerators)
        return GateParams.from_pairs(3, [lam1, lam2], [(1, 2, mu12)])


def _lattice_denominator(coeffs: np.ndarray, phase_denominator: int) -> int:
    # any solution of C x ≡ b (mod 2π) with b ∈ (2π/q)Z solves a nonsingular
    # 3x3 subsystem, so x ∈ 2π·adj(C_s)·b / det(C_s) ⊂ (2π / (q·|det C_s|)) Z
    for rows in itertools.combinations(range(coeffs.shape[0]), coeffs.shape[1]):
        det = int(round(np.linalg.det(coeffs[list(rows)])))
        if det:
            return phase_denominator * abs(det)
    raise ArithmeticError("phase system has no full-rank subsystem")


def enumerate_n3() -> list[N3Solution]:
    """Every N = 3 gate whose three phase triples are permutations of
    ``{0, 2π/3, 4π/3}`` mod 2π.

    Works in exact integer arithmetic: all solutions lie on the lattice
    ``x = 2π k / D`` with ``D`` from :func:`_lattice_denominator`, so the
    congruences are checked on integer numerators over ``Z_D³``.  Lattice
    points are distinct mod 2π by construction.
    """
    c = phase_coefficients(3)                   # (pair, β, param)
    flat = c.reshape(-1, c.shape[-1])
    d = _lattice_denominator(flat, 3)
    ks = np.array(list(itertools.product(range(d), repeat=3)))
    s = np.mod(np.einsum("pbj,kj->kpb", c, ks), d)   # phase numerators over d
    thirds_ok = np.all((3 * s) % d == 0, axis=(1, 2))
    t = (3 * s) // d
    perm_ok = np.all(np.sort(t, axis=2) == np.arange(3), axis=(1, 2))
    out = []
    for idx in np.flatnonzero(thirds_ok & perm_ok):
        out.append(
            N3Solution(
                numerators=tuple(int(v) for v in ks[idx]),
                denominator=d,
                assignment=tuple(tuple(int(v) for v in row) for row in t[idx]),
            )
        )
    return out


def _n3_family(solutions: list[N3Solution]) -> SolutionFamily:
    return SolutionFamily(
        n=3,
        family_id="n3",
        binding=lambda index=0: solutions[index].params,
        integer_params={"index": range(len(solutions))},
        formulas={
            "(lambda1, lambda2, mu12)": [
                f"2pi*{s.numerators}/{s.denominator}" for s in solutions
            ]
        },
    )


# ---------------------------------------------------------------- N = 4

def _n4(l1, l2, l3, m12, m13, m23) -> GateParams:
    return GateParams.from_pairs(4, [l1, l2, l3], [(1, 2, m12), (1, 3, m13), (2, 3, m23)])


# Families 1-4 share λ₂ = 2μ₂₃ - π and μ₁₃ = β + μ₂₃; they differ in the
# offsets of λ₁, λ₃, μ₁₂ (multiples of π/4) and in the admissible μ₂₃ values,
# each written as (constant, coefficient of β).
_SHARED = [
    # (group, λ₁ offset, λ₃ offset, μ₁₂ - μ₂₃, μ₂₃ alternatives)
    (1, -PI, 0.0, -PI, [(PI / 2, 0), (3 * PI / 2, 0), (PI / 2, -2), (3 * PI / 2, -2)]),
    (2, PI / 4, PI / 4, -PI / 2, [(3 * PI / 4, 0), (7 * PI / 4, 0), (0.0, -2), (PI, -2)]),
    (3, -PI / 2, PI / 2, 0.0, [(0.0, 0), (PI, 0), (PI / 2, -2), (3 * PI / 2, -2)]),
    (4, 3 * PI / 4, 3 * PI / 4, PI / 2, [(PI / 4, 0), (5 * PI / 4, 0), (0.0, -2), (PI, -2)]),
]

_SHARED_TEXT = {
    1: ("-beta - pi + pi*p", "-beta + pi*p", "mu23 - pi", ["pi/2", "3pi/2", "pi/2 - 2beta", "3pi/2 - 2beta"]),
    2: ("-beta + pi/4 + pi*p", "-beta + pi/4 + pi*p", "mu23 - pi/2", ["3pi/4", "7pi/4", "-2beta", "pi - 2beta"]),
    3: ("-beta - pi/2 + pi*p", "-beta + pi/2 + pi*p", "mu23", ["0", "pi", "pi/2 - 2beta", "3pi/2 - 2beta"]),
    4: ("-beta + 3pi/4 + pi*p", "-beta + 3pi/4 + pi*p", "mu23 + pi/2", ["pi/4", "5pi/4", "-2beta", "pi - 2beta"]),
}


def _shared_binding(o1, o3, o12, m_const, m_beta):
    def bind(beta=0.0, p=0):
        m23 = m_const + m_beta * beta
        return _n4(-beta + o1 + PI * p, 2 * m23 - PI, -beta + o3 + PI * p,
                   m23 + o12, beta + m23, m23)
    return bind


def _family5(beta=0.0, p=0, q=0):
    return _n4(beta + PI * p + PI * q, PI / 2 * q, beta + PI * p,
               3 * PI / 4 * q + PI, beta + PI / 4 * q, PI / 4 * q)


def _family6(beta=0.0, p=0, q=0):
    return _n4(-beta + 5 * PI / 4 * p - PI / 2 * q, -4 * beta + PI * p,
               -beta + PI / 4 * p - PI / 2 * q, -2 * beta + PI + PI * p + PI * q,
               -beta + PI / 2 * p, -2 * beta + PI / 2 * p)


def n4_families() -> list[SolutionFamily]:
    beta_dom = {"beta": (0.0, 2 * PI)}
    fams = []
    for group, o1, o3, o12, alts in _SHARED:
        t1, t3, t12, t23 = _SHARED_TEXT[group]
        for j, ((mc, mb), txt) in enumerate(zip(alts, t23)):
            sub = "abcd"[j]
            fams.append(SolutionFamily(
                n=4,
                family_id=f"n4-f{group}{sub}",
                group=group,
                binding=_shared_binding(o1, o3, o12, mc, mb),
                free_params=beta_dom,
                integer_params={"p": range(2)},
                formulas={"lambda1": t1, "lambda2": "2*mu23 - pi", "lambda3": t3,
                          "mu12": t12, "mu13": "beta + mu23", "mu23": txt},
            ))
    fams.append(SolutionFamily(
        n=4, family_id="n4-f5", group=5, binding=_family5, free_params=beta_dom,
        integer_params={"p": range(2), "q": range(2)},
        formulas={"lambda1": "beta + pi*p + pi*q", "lambda2": "pi/2*q", "lambda3": "beta + pi*p",
                  "mu12": "3pi/4*q + pi", "mu13": "beta + pi/4*q", "mu23": "pi/4*q"},
    ))
    fams.append(SolutionFamily(
        n=4, family_id="n4-f6", group=6, binding=_family6, free_params=beta_dom,
        integer_params={"p": range(2), "q": range(2)},
        formulas={"lambda1": "-beta + 5pi/4*p - pi/2*q", "lambda2": "-4beta + pi*p",
                  "lambda3": "-beta + pi/4*p - pi/2*q", "mu12": "-2beta + pi + pi*p + pi*q",
                  "mu13": "-beta + pi/2*p", "mu23": "-2beta + pi/2*p"},
    ))
    return fams


def catalog(n: int) -> list[SolutionFamily]:
    if n == 2:
        return [_n2_family()]
    if n == 3:
        return [_n3_family(enumerate_n3())]
    if n == 4:
        return n4_families()
    raise UnsupportedError(
        f"no closed-form catalog for n={n}; use solver.solve_numeric instead"
    )


def catalog_members(n: int, n_free: int = 25, integer_ranges: dict | None = None):
    """Flatten :func:`catalog` into ``(family_id, assignment, GateParams)`` triples."""
    for fam in catalog(n):
        for values, params in fam.grid(n_free, integer_ranges):
            yield fam.family_id, values, params


def match_family(p: GateParams, families=None, tol: float = 1e-6, int_range: int = 8):
    """Locate ``p`` on an N = 4 family, up to 2π in every angle.

    Each binding is affine in ``β`` and ``λ₁`` always carries ``β`` with
    coefficient ±1, which pins ``β`` mod 2π; the remaining angles are then
    compared on the torus.  Returns ``(family_id, assignment)`` or ``None``.
    """
    families = n4_families() if families is None else families
    x = p.to_vector()
    for fam in families:
        if fam.n != p.n:
            continue
        names = list(fam.integer_params)
        for ints in itertools.product(range(int_range), repeat=len(names)):
            kw = dict(zip(names, ints))
            a = fam(beta=0.0, **kw).to_vector()
            c = np.rint(fam(beta=1.0, **kw).to_vector() - a)
            j = int(np.flatnonzero(np.abs(c) == 1)[0])
            beta = float(np.mod((x[j] - a[j]) / c[j], 2 * PI))
            if torus_distance(fam(beta=beta, **kw).to_vector(), x) <= tol:
                return fam.family_id, {"beta": beta, **kw}
    return None
