"""Small dense complex linear algebra helpers.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
Every relation check in the package reports residuals in the max-abs
entry norm so thresholds do not depend on the matrix size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DenseLimitExceeded, EmptyProduct, ShapeError

# Largest total dimension D**n for which dense matrices are built.
DENSE_LIMIT = 4096

TOL_RELATION = 1e-10
TOL_CONSTRUCTOR = 1e-12

PROPERTIES = ("unitary", "hermitian", "involution", "projector")


def as_matrix(data, *, square: bool = False) -> np.ndarray:
    """Coerce ``data`` to a finite 2-D complex array (read-only copy)."""
    m = np.array(data, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if square and m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.setflags(write=False)
    return m


def as_vector(data) -> np.ndarray:
    v = np.array(data, dtype=np.complex128)
    if v.ndim != 1:
        raise ShapeError(f"expected a 1-D vector, got ndim={v.ndim}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    v.setflags(write=False)
    return v


def check_dense_limit(dim: int, limit: int | None = None) -> None:
    limit = DENSE_LIMIT if limit is None else limit
    if dim > limit:
        raise DenseLimitExceeded(f"dense dimension {dim} exceeds limit {limit}")


def tensor_product(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product ``factors[0] ⊗ factors[1] ⊗ ...``."""
    factors = list(factors)
    if not factors:
        raise EmptyProduct("tensor_product needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=np.complex128) for f in factors))


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def matrix_residual(a, b) -> float:
    """Largest absolute entrywise difference between ``a`` and ``b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    _same_shape(a, b)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def frobenius_residual(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    _same_shape(a, b)
    return float(np.linalg.norm(a - b))


@dataclass(frozen=True)
class PropertyReport:
    property: str
    passed: bool
    residual: float
    frobenius: float

    def __bool__(self) -> bool:
        return self.passed


def check_property(a, prop: str, tol: float = TOL_CONSTRUCTOR) -> PropertyReport:
    """Check one of ``unitary``, ``hermitian``, ``involution``, ``projector``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"check_property needs a square matrix, got {a.shape}")
    eye = np.eye(a.shape[0], dtype=np.complex128)
    if prop == "unitary":
        lhs, rhs = a.conj().T @ a, eye
    elif prop == "hermitian":
        lhs, rhs = a, a.conj().T
    elif prop == "involution":
        lhs, rhs = a @ a, eye
    elif prop == "projector":
        lhs, rhs = a @ a, a
    else:
        raise ValueError(f"unknown property {prop!r}; choose from {PROPERTIES}")
    r = matrix_residual(lhs, rhs)
    return PropertyReport(prop, r <= tol, r, frobenius_residual(lhs, rhs))


def dagger(a) -> np.ndarray:
    return np.asarray(a).conj().T


def ket(level: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.complex128)
    v[level] = 1.0
    return v


def outer(i: int, j: int, dim: int) -> np.ndarray:
    """The matrix unit |i><j| of size ``dim``."""
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[i, j] = 1.0
    return m


# -- JSON interchange ---------------------------------------------------------

def complex_pairs(values: Iterable[complex]) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def _from_pairs(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ShapeError("complex entries must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def matrix_to_dict(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {"rows": m.shape[0], "cols": m.shape[1], "entries": complex_pairs(m.ravel())}


def matrix_from_dict(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if rows * cols != len(entries):
        raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
    if rows * cols == 0:
        return as_matrix(np.zeros((rows, cols)))
    return as_matrix(_from_pairs(entries).reshape(rows, cols))


def matrix_to_json(m) -> str:
    return json.dumps(matrix_to_dict(m))


def matrix_from_json(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))
