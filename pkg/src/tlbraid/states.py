"""Successive superposition chains, GHZ generation and entanglement diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import LevelError, OutOfUnitaryWindow, PartitionError, PositionError
from .gates import GateParams, apply_gate, ghz_lambdas, make_braid_gate, realize_involution
from .linalg import tensor_product
from .register import (
    QuditRegisterState,
    basis_state,
    digits_to_index,
    format_digits,
    index_to_digits,
    overlap,
)

__all__ = [
    "CoefficientTable", "GhzParamSet", "QuditRegisterState", "basis_state",
    "chain_branch_amplitudes", "coefficients_closed_form", "entanglement_entropy",
    "generate_ghz", "ghz_levels", "ghz_params", "overlap", "proper_bipartitions",
    "run_superposition_chain", "schmidt_coefficients",
    "digits_to_index", "index_to_digits", "format_digits",
]

_EIG_CUTOFF = 1e-14


@dataclass(frozen=True)
class CoefficientTable:
    l: int
    entries: tuple[complex, ...]

    def __getitem__(self, r: int) -> complex:
        return self.entries[r]

    def probabilities(self) -> list[float]:
        return [abs(z) ** 2 for z in self.entries]


@dataclass(frozen=True)
class GhzParamSet:
    l: int
    pairs: tuple[tuple[float, float], ...]
    b_signs: tuple[int, ...]

    @property
    def a(self) -> list[float]:
        return [math.sqrt(a2) for a2, _ in self.pairs]

    @property
    def b(self) -> list[float]:
        return [s * math.sqrt(b2) for (_, b2), s in zip(self.pairs, self.b_signs)]


def ghz_params(l: int, b_signs: Sequence[int] | None = None) -> GhzParamSet:
    """a_j^2 = (l-j+1)/(l-j+2), b_j^2 = 1/(l-j+2) for j = 1..l."""
    if l < 1:
        raise LevelError(f"GHZ level l must be >= 1, got {l}")
    b_signs = tuple(b_signs) if b_signs is not None else (1,) * l
    if len(b_signs) != l or any(s not in (1, -1) for s in b_signs):
        raise ValueError(f"need {l} b signs of +1/-1, got {b_signs!r}")
    pairs = tuple(
        (float(Fraction(l - j + 1, l - j + 2)), float(Fraction(1, l - j + 2)))
        for j in range(1, l + 1)
    )
    return GhzParamSet(l, pairs, b_signs)


def coefficients_closed_form(l: int, params: Sequence[tuple[float, float, complex]],
                             phis: Sequence[float] | None = None) -> CoefficientTable:
    """Branch coefficients after ``l`` gates, from per-step ``(a_j, b_j, A_j)``.

    alpha_l0 = a_1 ... a_l and, for p >= 1,
    alpha_lp = (A_{p+1} ... A_l)^-2 * exp(i phi_p) b_p * a_1 ... a_{p-1}.
    """
    if len(params) != l:
        raise ValueError(f"need {l} parameter triples, got {len(params)}")
    phis = [0.0] * l if phis is None else list(phis)
    for a, b, A in params:
        if not 0.25 - 1e-12 <= a * a <= 1 + 1e-12 or abs(a * a + b * b - 1) > 1e-12:
            raise OutOfUnitaryWindow(f"invalid step parameters a={a!r}, b={b!r}")
    a = [p[0] for p in params]
    b = [p[1] for p in params]
    A = [complex(p[2]) for p in params]
    entries = [complex(np.prod(a))]
    for p in range(1, l + 1):
        phase = np.prod([A[j] ** -2 for j in range(p, l)]) if p < l else 1.0
        entries.append(complex(phase * np.exp(1j * phis[p - 1]) * b[p - 1] * np.prod(a[: p - 1])))
    return CoefficientTable(l, tuple(entries))


def run_superposition_chain(start: QuditRegisterState, k: int, q: int, levels: Sequence[int],
                            a: Sequence[float], b_signs: Sequence[int] | None = None,
                            phis: Sequence[float] | None = None, lambdas=None,
                            history: bool = False):
    """Apply B_{q,levels[0]}, B_{q,levels[1]}, ... in order at pivot position ``k``.

    ``lambdas[i]`` holds the n-1 involutions of step i; by default every step
    uses the transposition q <-> levels[i].  With ``history=True`` the list of
    all intermediate states (start included) is returned as well.
    """
    m = len(levels)
    b_signs = [1] * m if b_signs is None else list(b_signs)
    phis = [0.0] * m if phis is None else list(phis)
    if not (len(a) == len(b_signs) == len(phis) == m):
        raise ValueError("levels, a, b_signs and phis must have equal length")
    if lambdas is not None and len(lambdas) != m:
        raise ValueError(f"need one involution list per step ({m}), got {len(lambdas)}")
    state = start
    states = [start]
    for i, lvl in enumerate(levels):
        params = GateParams(start.D, start.n, k, q, lvl, a[i], b_signs[i], phis[i])
        lam = ghz_lambdas(start.n, q, lvl) if lambdas is None else lambdas[i]
        state = apply_gate(make_braid_gate(params, lam), state)
        states.append(state)
    return (state, states) if history else state


def _branch_vector(D: int, n: int, k: int, digits, level: int, lambdas) -> np.ndarray:
    factors = []
    it = iter(lambdas)
    for pos in range(1, n + 1):
        e = np.zeros(D, dtype=np.complex128)
        if pos == k:
            e[level] = 1.0
            factors.append(e)
            continue
        e[digits[pos - 1]] = 1.0
        lam = next(it)
        factors.append(e if lam is None else realize_involution(lam, D) @ e)
    return tensor_product([f.reshape(-1, 1) for f in factors]).reshape(-1)


def chain_branch_amplitudes(state: QuditRegisterState, start_digits: Sequence[int], k: int,
                            levels: Sequence[int], lambdas=None) -> list[complex]:
    """Overlaps of ``state`` with the chain's branch states.

    Branch 0 is the start ket; branch p carries level ``levels[p-1]`` at the
    pivot and the step-p involutions applied to every other start digit.
    """
    D, n = state.D, state.n
    q = start_digits[k - 1]
    if len(set(levels)) != len(levels) or q in levels:
        raise LevelError("branch extraction needs distinct target levels different from the pivot level")
    out = [state.amplitude(start_digits)]
    for i, lvl in enumerate(levels):
        lam = ghz_lambdas(n, q, lvl) if lambdas is None else lambdas[i]
        v = _branch_vector(D, n, k, start_digits, lvl, lam)
        out.append(complex(np.vdot(v, state.amplitudes)))
    return out


def ghz_levels(q: int, l: int) -> list[int]:
    """Target levels 1..l relabeled by the swap 0 <-> q."""
    swap = {0: q, q: 0}
    return [swap.get(r, r) for r in range(1, l + 1)]


def generate_ghz(D: int, n: int, l: int, k: int = 1, b_signs: Sequence[int] | None = None,
                 q: int = 0) -> QuditRegisterState:
    """Equal-weight superposition of |rr...r> over l+1 levels, built from |qq...q>."""
    if not 1 <= l <= D - 1:
        raise LevelError(f"GHZ level l = {l} outside 1..{D - 1}")
    if not 0 <= q < D:
        raise LevelError(f"pivot level q = {q} outside 0..{D - 1}")
    if not 1 <= k <= n:
        raise PositionError(f"pivot position k = {k} outside 1..{n}")
    gp = ghz_params(l, b_signs)
    start = basis_state(D, n, [q] * n)
    return run_superposition_chain(start, k, q, ghz_levels(q, l), gp.a, gp.b_signs)


# -- entanglement -------------------------------------------------------------

def _check_partition(n: int, part: Iterable[int]) -> tuple[int, ...]:
    part = tuple(sorted(set(int(p) for p in part)))
    if not part or len(part) >= n:
        raise PartitionError(f"bipartition {part} is not a proper nonempty subset of 1..{n}")
    if part[0] < 1 or part[-1] > n:
        raise PartitionError(f"positions {part} outside 1..{n}")
    return part


def schmidt_coefficients(state: QuditRegisterState, part: Iterable[int]) -> np.ndarray:
    """Singular values of the amplitude matrix split as ``part`` | rest."""
    part = _check_partition(state.n, part)
    rest = tuple(p for p in range(1, state.n + 1) if p not in part)
    t = np.transpose(state.tensor(), [p - 1 for p in part + rest])
    mat = t.reshape(state.D ** len(part), state.D ** len(rest))
    return np.linalg.svd(mat, compute_uv=False)


def entanglement_entropy(state: QuditRegisterState, part: Iterable[int]) -> float:
    """Von Neumann entropy (bits) of the reduced state on positions ``part``."""
    p = schmidt_coefficients(state, part) ** 2
    p = p[p > _EIG_CUTOFF]
    p = p / p.sum()
    return max(0.0, float(-np.sum(p * np.log2(p))))


def proper_bipartitions(n: int) -> list[tuple[int, ...]]:
    """One representative per cut: subsets containing position 1, excluding the full set."""
    rest = range(2, n + 1)
    return [(1,) + c for r in range(0, n - 1) for c in combinations(rest, r)]
