"""Reference qubit gates: the Bell matrix and the Hadamard matrix."""

from __future__ import annotations

import numpy as np

from .linalg import matrix_residual, tensor_product

_S = 1.0 / np.sqrt(2.0)


def bell_matrix() -> np.ndarray:
    return _S * np.array(
        [[1, 0, 0, -1],
         [0, 1, -1, 0],
         [0, 1, 1, 0],
         [1, 0, 0, 1]],
        dtype=np.complex128,
    )


def hadamard() -> np.ndarray:
    return _S * np.array([[1, 1], [1, -1]], dtype=np.complex128)


def bell_states() -> dict[str, np.ndarray]:
    """Images of |00>, |01>, |10>, |11> under the Bell matrix."""
    return {
        "00": _S * np.array([1, 0, 0, 1], dtype=np.complex128),
        "01": _S * np.array([0, 1, 1, 0], dtype=np.complex128),
        "10": _S * np.array([0, -1, 1, 0], dtype=np.complex128),
        "11": _S * np.array([-1, 0, 0, 1], dtype=np.complex128),
    }


def yang_baxter_residual(R, local_dim: int = 2) -> float:
    """Residual of ``(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R)``."""
    R = np.asarray(R, dtype=np.complex128)
    eye = np.eye(local_dim, dtype=np.complex128)
    r12 = tensor_product([R, eye])
    r23 = tensor_product([eye, R])
    return matrix_residual(r12 @ r23 @ r12, r23 @ r12 @ r23)
