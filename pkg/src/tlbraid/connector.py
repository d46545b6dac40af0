"""Braid gate that carries a basis component |c> onto a full state |psi>.

With ``E1 = |c><c|`` and ``E2 = |psi><psi|`` the pair ``(d E1, d E2)`` obeys
TL_3(d) for ``d = 1/|alpha|``, ``alpha = <c|psi>``.  The product of the Jones
generators is

    sigma1 sigma2 = A^2 d^2 E1 E2 + d (E1 + E2) + A^-2 I,

and on the component ket it gives ``d conj(alpha) |psi>``, i.e. |psi> times
the unit phase ``exp(-i arg alpha)``.  Unitarity needs ``|alpha|^2 >= 1/4``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BelowThreshold, NormError, ShapeError
from .linalg import check_dense_limit
from .register import NORM_TOL, QuditRegisterState, digits_to_index, index_to_digits, validate_digits
from .tla import TlaPair, solve_phase

THRESHOLD = 0.25
THRESHOLD_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ConnectorGate:
    psi: QuditRegisterState
    component: tuple[int, ...]
    component_index: int
    alpha: complex
    d: float
    A: complex

    @property
    def alpha2(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def phase(self) -> complex:
        """Unit phase ``u`` with ``sigma1 sigma2 |c> = u |psi>``."""
        return self.d * self.alpha.conjugate()

    def projectors(self, limit: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        dim = self.psi.dim
        check_dense_limit(dim, limit)
        E1 = np.zeros((dim, dim), dtype=np.complex128)
        E1[self.component_index, self.component_index] = 1.0
        v = self.psi.amplitudes
        return E1, np.outer(v, v.conj())

    def tla_pair(self, limit: int | None = None) -> TlaPair:
        E1, E2 = self.projectors(limit)
        return TlaPair(self.d * E1, self.d * E2, self.d)

    def sigmas(self, limit: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        E1, E2 = self.projectors(limit)
        eye = np.eye(E1.shape[0], dtype=np.complex128)
        A, d = self.A, self.d
        return A * d * E1 + eye / A, A * d * E2 + eye / A

    def dense(self, limit: int | None = None) -> np.ndarray:
        s1, s2 = self.sigmas(limit)
        return s1 @ s2

    def apply(self, state):
        return apply_connector(self, state)


def connect(psi: QuditRegisterState, component: Sequence[int]) -> ConnectorGate:
    component = tuple(int(s) for s in component)
    validate_digits(component, psi.D, psi.n)
    norm = psi.norm()
    if abs(norm - 1.0) > NORM_TOL:
        raise NormError(f"target state has norm {norm!r}")
    idx = digits_to_index(component, psi.D)
    alpha = complex(psi.amplitudes[idx])
    alpha2 = abs(alpha) ** 2
    if alpha2 < THRESHOLD - THRESHOLD_TOL:
        raise BelowThreshold(alpha2)
    d = min(max(1.0 / abs(alpha), 1.0), 2.0)
    return ConnectorGate(psi, component, idx, alpha, d, solve_phase(d))


def apply_connector(gate: ConnectorGate, state):
    """``sigma1 sigma2 v`` via two inner products; O(D^n)."""
    if isinstance(state, QuditRegisterState):
        if (state.D, state.n) != (gate.psi.D, gate.psi.n):
            raise ShapeError(f"connector acts on D={gate.psi.D}, n={gate.psi.n}; state has D={state.D}, n={state.n}")
        return state.replace(apply_connector(gate, state.amplitudes))
    v = np.asarray(state, dtype=np.complex128)
    if v.shape != (gate.psi.dim,):
        raise ShapeError(f"vector of length {v.size} does not match dimension {gate.psi.dim}")
    psi = gate.psi.amplitudes
    c = gate.component_index
    A, d = gate.A, gate.d
    proj = np.vdot(psi, v)  # <psi|v>
    out = v / A**2 + d * proj * psi
    out[c] += A**2 * d * d * gate.alpha * proj + d * v[c]
    return out


def admissible_components(psi: QuditRegisterState, cutoff: float = THRESHOLD) -> list[dict]:
    """Every component with ``|alpha|^2 >= cutoff``, largest first."""
    probs = psi.probabilities()
    idx = np.flatnonzero(probs >= cutoff - THRESHOLD_TOL)
    rows = [
        {"digits": index_to_digits(int(i), psi.D, psi.n), "alpha2": float(probs[i])}
        for i in idx
    ]
    return sorted(rows, key=lambda r: (-r["alpha2"], r["digits"]))


def connector_report(gate: ConnectorGate) -> dict:
    """Summary of the gate action on its component ket."""
    out = apply_connector(gate, _component_vector(gate))
    ov = complex(np.vdot(gate.psi.amplitudes, out))
    return {
        "component": list(gate.component),
        "alpha": [gate.alpha.real, gate.alpha.imag],
        "alpha2": gate.alpha2,
        "d": gate.d,
        "A": [gate.A.real, gate.A.imag],
        "theta": cmath.phase(gate.A),
        "phase": cmath.phase(ov) if abs(ov) > 0 else 0.0,
        "overlap": [ov.real, ov.imag],
        "overlap_abs": abs(ov),
        "fidelity_error": abs(abs(ov) - 1.0),
    }


def _component_vector(gate: ConnectorGate) -> np.ndarray:
    v = np.zeros(gate.psi.dim, dtype=np.complex128)
    v[gate.component_index] = 1.0
    return v


__all__ = [
    "ConnectorGate", "THRESHOLD", "admissible_components", "apply_connector",
    "connect", "connector_report",
]
