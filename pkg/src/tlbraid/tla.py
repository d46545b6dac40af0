"""Temperley-Lieb relations and the Jones representation of the braid group B3.

Given Hermitian TL generators ``h1, h2`` with loop value ``d`` and a unit
phase ``A`` with ``d = -A**2 - A**-2``, the braid generators are
``sigma_i = A*h_i + A**-1 * I``.  Only the branch ``1 <= d <= 2`` with
``theta = arccos(-d/2) / 2`` in ``[pi/3, pi/2]`` is supported.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfUnitaryWindow, PhaseError, ShapeError
from .linalg import TOL_RELATION, matrix_residual

# Slack for d landing a few ulps outside [1, 2] (e.g. d = 1/|alpha| at |alpha|^2 = 1/4).
_D_SLACK = 1e-12


def solve_phase(d: float) -> complex:
    """Return ``A = exp(i*theta)`` solving ``-A**2 - A**-2 = d`` for ``1 <= d <= 2``."""
    d = float(d)
    if not math.isfinite(d) or d < 1.0 - _D_SLACK or d > 2.0 + _D_SLACK:
        raise OutOfUnitaryWindow(f"d = {d!r} outside the unitary window [1, 2]")
    d = min(max(d, 1.0), 2.0)
    theta = 0.5 * math.acos(-d / 2.0)
    return cmath.exp(1j * theta)


@dataclass(frozen=True)
class TlaScalars:
    d: float
    a_squared: float
    A: complex
    theta: float

    @classmethod
    def from_d(cls, d: float) -> "TlaScalars":
        A = solve_phase(d)
        return cls(d=float(d), a_squared=1.0 / float(d) ** 2, A=A, theta=cmath.phase(A))

    @classmethod
    def from_a(cls, a: float) -> "TlaScalars":
        if a == 0 or not math.isfinite(a):
            raise OutOfUnitaryWindow(f"a = {a!r} gives no finite d")
        return cls.from_d(1.0 / a)

    def loop_residual(self) -> float:
        """``|-A^2 - A^-2 - d|``; zero up to rounding."""
        return abs(-self.A**2 - self.A**-2 - self.d)


@dataclass(frozen=True)
class TlaPair:
    h1: np.ndarray
    h2: np.ndarray
    d: float

    def __post_init__(self):
        h1 = np.asarray(self.h1, dtype=np.complex128)
        h2 = np.asarray(self.h2, dtype=np.complex128)
        if h1.ndim != 2 or h1.shape[0] != h1.shape[1] or h1.shape != h2.shape:
            raise ShapeError(f"TL generators must be equal square matrices, got {h1.shape} and {h2.shape}")
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "h2", h2)


@dataclass(frozen=True)
class RelationReport:
    passed: bool
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def __bool__(self) -> bool:
        return self.passed


def check_tla(pair: TlaPair, tol: float = TOL_RELATION) -> RelationReport:
    h1, h2, d = pair.h1, pair.h2, pair.d
    res = {
        "h1h2h1=h1": matrix_residual(h1 @ h2 @ h1, h1),
        "h2h1h2=h2": matrix_residual(h2 @ h1 @ h2, h2),
        "h1^2=d*h1": matrix_residual(h1 @ h1, d * h1),
        "h2^2=d*h2": matrix_residual(h2 @ h2, d * h2),
        "h1=h1^dag": matrix_residual(h1, h1.conj().T),
        "h2=h2^dag": matrix_residual(h2, h2.conj().T),
    }
    return RelationReport(all(r <= tol for r in res.values()), res)


def _check_unit(A: complex) -> None:
    if abs(abs(A) - 1.0) > 1e-12:
        raise PhaseError(f"|A| = {abs(A)!r}, expected a unit-modulus phase")


def jones_generators(pair: TlaPair, A: complex) -> tuple[np.ndarray, np.ndarray]:
    """``sigma_i = A*h_i + A^-1 * I`` for i = 1, 2."""
    _check_unit(A)
    eye = np.eye(pair.h1.shape[0], dtype=np.complex128)
    return A * pair.h1 + eye / A, A * pair.h2 + eye / A


def jones_inverses(pair: TlaPair, A: complex) -> tuple[np.ndarray, np.ndarray]:
    """``sigma_i^-1 = A^-1*h_i + A * I``."""
    _check_unit(A)
    eye = np.eye(pair.h1.shape[0], dtype=np.complex128)
    return pair.h1 / A + A * eye, pair.h2 / A + A * eye


def check_braid(sigma1, sigma2, tol: float = TOL_RELATION) -> RelationReport:
    s1 = np.asarray(sigma1, dtype=np.complex128)
    s2 = np.asarray(sigma2, dtype=np.complex128)
    if s1.ndim != 2 or s1.shape[0] != s1.shape[1] or s1.shape != s2.shape:
        raise ShapeError(f"braid generators must be equal square matrices, got {s1.shape} and {s2.shape}")
    r = matrix_residual(s1 @ s2 @ s1, s2 @ s1 @ s2)
    return RelationReport(r <= tol, {"s1s2s1=s2s1s2": r})
