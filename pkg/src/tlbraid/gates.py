"""Qudit TL generators and the braid quantum gate B_ql(n, k).

For a pivot level ``q`` and a target level ``l`` the single-site operators are

    e1 = |q><q|
    e2 = a^2 |q><q| + b^2 |l><l|
    e3 = a b (exp(-i phi) |q><l| + exp(i phi) |l><q|)

and on an n-qudit register with pivot position ``k`` (1-based)

    E1 = I ⊗ .. ⊗ e1 ⊗ .. ⊗ I
    E2 = I ⊗ .. ⊗ e2 ⊗ .. ⊗ I  +  λ ⊗ .. ⊗ e3 ⊗ .. ⊗ λ

where the λ are Hermitian involutions on the non-pivot positions.  With
``d = 1/a`` the pair ``(d E1, d E2)`` satisfies TL_3(d), and the gate is
``B = sigma1 sigma2``, stored as a sum of two Kronecker products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    ArityError,
    InvalidInvolution,
    LevelError,
    OutOfUnitaryWindow,
    PivotCollision,
    PositionError,
    ShapeError,
)
from .linalg import (
    DENSE_LIMIT,
    TOL_CONSTRUCTOR,
    as_matrix,
    check_dense_limit,
    matrix_from_dict,
    matrix_residual,
    matrix_to_dict,
    outer,
    tensor_product,
)
from .register import QuditRegisterState
from .tla import TlaPair, TlaScalars, jones_generators

_A2_SLACK = 1e-12


def _check_a2(a2: float) -> None:
    if not math.isfinite(a2) or a2 < 0.25 - _A2_SLACK or a2 > 1.0 + _A2_SLACK:
        raise OutOfUnitaryWindow(f"a^2 = {a2!r} outside [1/4, 1]")


def _check_levels(D: int, q: int, l: int) -> None:
    if D < 2:
        raise LevelError(f"D must be >= 2, got {D}")
    for name, v in (("q", q), ("l", l)):
        if not 0 <= v < D:
            raise LevelError(f"{name} = {v} outside 0..{D - 1}")
    if q == l:
        raise PivotCollision(f"target level l = {l} equals pivot level q")


@dataclass(frozen=True)
class GateParams:
    """Scalars defining one braid gate.  ``k`` is 1-based, ``a`` > 0."""

    D: int
    n: int
    k: int
    q: int
    l: int
    a: float
    b_sign: int = 1
    phi: float = 0.0
    scalars: TlaScalars = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_levels(self.D, self.q, self.l)
        if self.n < 1:
            raise ShapeError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise PositionError(f"pivot position k = {self.k} outside 1..{self.n}")
        _check_a2(self.a * self.a)
        if self.b_sign not in (1, -1):
            raise ValueError(f"b_sign must be +1 or -1, got {self.b_sign!r}")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        # a <= 0 gives d outside [1, 2]; solve_phase rejects it
        object.__setattr__(self, "scalars", TlaScalars.from_a(self.a))

    @classmethod
    def from_a2(cls, D, n, k, q, l, a2, b_sign=1, phi=0.0) -> "GateParams":
        _check_a2(a2)
        return cls(D, n, k, q, l, math.sqrt(min(max(a2, 0.25), 1.0)), b_sign, phi)

    @property
    def a2(self) -> float:
        return self.a * self.a

    @property
    def b(self) -> float:
        return self.b_sign * math.sqrt(max(0.0, 1.0 - self.a2))

    @property
    def d(self) -> float:
        return self.scalars.d

    @property
    def A(self) -> complex:
        return self.scalars.A


# -- involutions --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Involution:
    """A λ operator: ``identity``, ``transposition`` of levels (s, t), or ``custom``."""

    kind: str
    s: int | None = None
    t: int | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "transposition", "custom"):
            raise InvalidInvolution(f"unknown involution kind {self.kind!r}")
        if self.kind == "transposition" and (self.s is None or self.t is None):
            raise InvalidInvolution("transposition needs two levels")
        if self.kind == "custom":
            if self.matrix is None:
                raise InvalidInvolution("custom involution needs a matrix")
            try:
                m = as_matrix(self.matrix, square=True)
            except ValueError as exc:
                raise InvalidInvolution(str(exc)) from None
            object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "Involution":
        return cls("identity")

    @classmethod
    def transposition(cls, s: int, t: int) -> "Involution":
        return cls("transposition", int(s), int(t))

    @classmethod
    def custom(cls, matrix) -> "Involution":
        return cls("custom", matrix=matrix)

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity" or (self.kind == "transposition" and self.s == self.t)

    def __eq__(self, other):
        if not isinstance(other, Involution):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "custom":
            return np.array_equal(self.matrix, other.matrix)
        return (self.s, self.t) == (other.s, other.t)

    def __hash__(self):
        return hash((self.kind, self.s, self.t))

    def to_dict(self) -> dict:
        if self.kind == "identity":
            return {"kind": "identity"}
        if self.kind == "transposition":
            return {"kind": "transposition", "s": self.s, "t": self.t}
        return {"kind": "custom", "matrix": matrix_to_dict(self.matrix)}

    @classmethod
    def from_dict(cls, obj: dict) -> "Involution":
        kind = obj.get("kind")
        if kind == "identity":
            return cls.identity()
        if kind == "transposition":
            return cls.transposition(obj["s"], obj["t"])
        if kind == "custom":
            return cls.custom(matrix_from_dict(obj["matrix"]))
        raise InvalidInvolution(f"unknown involution kind {kind!r}")


def realize_involution(spec: Involution, D: int) -> np.ndarray:
    """D×D matrix of ``spec``, validated as a Hermitian involution."""
    if spec.kind == "identity":
        return np.eye(D, dtype=np.complex128)
    if spec.kind == "transposition":
        s, t = spec.s, spec.t
        if not (0 <= s < D and 0 <= t < D):
            raise InvalidInvolution(f"transposition levels ({s}, {t}) outside 0..{D - 1}")
        perm = np.arange(D)
        perm[s], perm[t] = t, s
        return np.eye(D, dtype=np.complex128)[perm]
    m = spec.matrix
    if m.shape != (D, D):
        raise InvalidInvolution(f"custom involution is {m.shape}, expected {(D, D)}")
    if matrix_residual(m, m.conj().T) > TOL_CONSTRUCTOR:
        raise InvalidInvolution("custom involution is not Hermitian")
    if matrix_residual(m @ m, np.eye(D)) > TOL_CONSTRUCTOR:
        raise InvalidInvolution("custom involution does not square to the identity")
    return np.array(m)


def _coerce_involution(x) -> Involution:
    return x if isinstance(x, Involution) else Involution.custom(x)


def ghz_lambdas(n: int, q: int, l: int) -> tuple[Involution, ...]:
    """Transpositions q <-> l on every non-pivot position."""
    return (Involution.transposition(q, l),) * (n - 1)


# -- local operators ----------------------------------------------------------

def make_local_ops(D: int, q: int, l: int, a: float, b_sign: int = 1, phi: float = 0.0):
    """Single-site ``(e1, e2, e3)`` for pivot ``q`` and target ``l``."""
    _check_levels(D, q, l)
    a2 = a * a
    _check_a2(a2)
    b = b_sign * math.sqrt(max(0.0, 1.0 - a2))
    e1 = outer(q, q, D)
    e2 = a2 * outer(q, q, D) + b * b * outer(l, l, D)
    e3 = a * b * (np.exp(-1j * phi) * outer(q, l, D) + np.exp(1j * phi) * outer(l, q, D))
    return e1, e2, e3


def local_identity_residuals(e1, e2, e3, a2: float) -> dict[str, float]:
    """Residuals of the seven algebraic identities obeyed by (e1, e2, e3)."""
    return {
        "e1^2=e1": matrix_residual(e1 @ e1, e1),
        "e2^2+e3^2=e2": matrix_residual(e2 @ e2 + e3 @ e3, e2),
        "e2e3+e3e2=e3": matrix_residual(e2 @ e3 + e3 @ e2, e3),
        "e1e2e1=a2*e1": matrix_residual(e1 @ e2 @ e1, a2 * e1),
        "e1e3e1=0": matrix_residual(e1 @ e3 @ e1, np.zeros_like(e1)),
        "e2e1e2+e3e1e3=a2*e2": matrix_residual(e2 @ e1 @ e2 + e3 @ e1 @ e3, a2 * e2),
        "e2e1e3+e3e1e2=a2*e3": matrix_residual(e2 @ e1 @ e3 + e3 @ e1 @ e2, a2 * e3),
    }


# -- structured operators -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class KronSum:
    """``sum_t coeff_t * (F_t1 ⊗ ... ⊗ F_tn)`` with ``None`` standing for I_D."""

    D: int
    n: int
    terms: tuple

    def apply(self, vec) -> np.ndarray:
        """Matrix-vector product without forming the D^n × D^n matrix."""
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (self.D**self.n,):
            raise ShapeError(f"vector of length {vec.size} does not match dimension {self.D ** self.n}")
        psi = vec.reshape((self.D,) * self.n)
        out = np.zeros_like(psi)
        for coeff, factors in self.terms:
            t = psi
            for axis, f in enumerate(factors):
                if f is not None:
                    t = np.moveaxis(np.tensordot(f, t, axes=([1], [axis])), 0, axis)
            out += coeff * t
        return out.reshape(-1)

    def dense(self, limit: int | None = None) -> np.ndarray:
        dim = self.D**self.n
        check_dense_limit(dim, limit)
        eye = np.eye(self.D, dtype=np.complex128)
        out = np.zeros((dim, dim), dtype=np.complex128)
        for coeff, factors in self.terms:
            out += coeff * tensor_product([eye if f is None else f for f in factors])
        return out


def _check_lambdas(params: GateParams, lambdas) -> tuple[Involution, ...]:
    if lambdas is None:
        lambdas = (Involution.identity(),) * (params.n - 1)
    lambdas = tuple(_coerce_involution(x) for x in lambdas)
    if len(lambdas) != params.n - 1:
        raise ArityError(f"need {params.n - 1} involutions for n = {params.n}, got {len(lambdas)}")
    return lambdas


def _dressed(params: GateParams, lambdas, pivot_op, dress: bool):
    """Factor list with ``pivot_op`` at position k and λ (or I) elsewhere."""
    factors = []
    it = iter(lambdas)
    for pos in range(1, params.n + 1):
        if pos == params.k:
            factors.append(pivot_op)
            continue
        lam = next(it)
        factors.append(None if not dress or lam.is_identity else realize_involution(lam, params.D))
    return tuple(factors)


def make_tl_generators(params: GateParams, lambdas=None) -> tuple[KronSum, KronSum]:
    lambdas = _check_lambdas(params, lambdas)
    e1, e2, e3 = make_local_ops(params.D, params.q, params.l, params.a, params.b_sign, params.phi)
    E1 = KronSum(params.D, params.n, ((1.0, _dressed(params, lambdas, e1, False)),))
    E2 = KronSum(params.D, params.n, (
        (1.0, _dressed(params, lambdas, e2, False)),
        (1.0, _dressed(params, lambdas, e3, True)),
    ))
    return E1, E2


def sigma_pair(params: GateParams, lambdas=None, limit: int | None = None):
    """Dense ``(sigma1, sigma2)`` from the Jones representation of ``(d E1, d E2)``."""
    E1, E2 = make_tl_generators(params, lambdas)
    d = params.d
    pair = TlaPair(d * E1.dense(limit), d * E2.dense(limit), d)
    return jones_generators(pair, params.A)


# -- braid gate ---------------------------------------------------------------

def pivot_terms(params: GateParams) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form pivot-site matrices (diagonal term, off-diagonal term) of B_ql."""
    D, q, l = params.D, params.q, params.l
    d, a, b, A, phi = params.d, params.a, params.b, params.A, params.phi
    diag = np.full(D, A**-2, dtype=np.complex128)
    diag[q] = d * a * a
    diag[l] = d * b * b + A**-2
    off = d * a * b * (np.exp(1j * phi) * outer(l, q, D) - np.exp(-1j * phi) * A**4 * outer(q, l, D))
    return np.diag(diag), off


@dataclass(frozen=True, eq=False)
class StructuredBraidGate:
    params: GateParams
    lambdas: tuple
    term_diag: np.ndarray
    term_offdiag: np.ndarray

    @cached_property
    def operator(self) -> KronSum:
        p = self.params
        return KronSum(p.D, p.n, (
            (1.0, _dressed(p, self.lambdas, self.term_diag, False)),
            (1.0, _dressed(p, self.lambdas, self.term_offdiag, True)),
        ))

    def apply(self, state):
        return apply_gate(self, state)

    def dense(self, limit: int | None = None) -> np.ndarray:
        return gate_to_dense(self, limit)

    def to_dict(self) -> dict:
        return gate_to_dict(self)


def make_braid_gate(params: GateParams, lambdas=None) -> StructuredBraidGate:
    lambdas = _check_lambdas(params, lambdas)
    for lam in lambdas:
        realize_involution(lam, params.D)
    diag, off = pivot_terms(params)
    return StructuredBraidGate(params, lambdas, diag, off)


def apply_gate(gate: StructuredBraidGate, state):
    """Apply ``gate`` to a register state (or a raw amplitude vector)."""
    p = gate.params
    if isinstance(state, QuditRegisterState):
        if (state.D, state.n) != (p.D, p.n):
            raise ShapeError(f"gate acts on D={p.D}, n={p.n}; state has D={state.D}, n={state.n}")
        return state.replace(gate.operator.apply(state.amplitudes))
    return gate.operator.apply(state)


def gate_to_dense(gate: StructuredBraidGate, limit: int | None = None) -> np.ndarray:
    return gate.operator.dense(limit)


def gate_to_dict(gate: StructuredBraidGate) -> dict:
    p = gate.params
    return {
        "D": p.D, "n": p.n, "k": p.k, "q": p.q, "l": p.l,
        "a2": p.a2, "b_sign": p.b_sign, "phi": p.phi,
        "lambdas": [lam.to_dict() for lam in gate.lambdas],
    }


def gate_from_dict(obj: dict) -> StructuredBraidGate:
    params = GateParams.from_a2(
        int(obj["D"]), int(obj["n"]), int(obj.get("k", 1)), int(obj.get("q", 0)), int(obj["l"]),
        float(obj["a2"]), int(obj.get("b_sign", 1)), float(obj.get("phi", 0.0)),
    )
    lambdas = obj.get("lambdas")
    if lambdas is not None:
        lambdas = [Involution.from_dict(x) for x in lambdas]
    return make_braid_gate(params, lambdas)


__all__ = [
    "DENSE_LIMIT", "GateParams", "Involution", "KronSum", "StructuredBraidGate",
    "apply_gate", "gate_from_dict", "gate_to_dense", "gate_to_dict", "ghz_lambdas",
    "local_identity_residuals", "make_braid_gate", "make_local_ops", "make_tl_generators",
    "pivot_terms", "realize_involution", "sigma_pair",
]
