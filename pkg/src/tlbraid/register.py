"""n-qudit register states in the lexicographic computational basis.

The basis ket |s1 s2 ... sn> sits at index ``sum_j s_j * D**(n-j)``, so the
amplitude vector reshapes to an ``(D,)*n`` tensor whose axis ``j-1`` is
register position ``j``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LevelError, NormError, ShapeError
from .linalg import complex_pairs

NORM_TOL = 1e-10


def digits_to_index(digits: Sequence[int], D: int) -> int:
    idx = 0
    for s in digits:
        idx = idx * D + int(s)
    return idx


def index_to_digits(index: int, D: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        index, r = divmod(index, D)
        out.append(r)
    return tuple(reversed(out))


def format_digits(digits: Sequence[int], D: int) -> str:
    """``"012"`` for D <= 10, otherwise ``"1,12,3"``."""
    if D <= 10:
        return "".join(str(s) for s in digits)
    return ",".join(str(s) for s in digits)


def parse_digits(text: str, D: int, n: int) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("|") and text.endswith(">"):
        text = text[1:-1]
    try:
        if "," in text:
            digits = tuple(int(p) for p in text.split(","))
        else:
            digits = tuple(int(c) for c in text)
    except ValueError:
        raise LevelError(f"cannot read basis digits from {text!r}") from None
    validate_digits(digits, D, n)
    return digits


def validate_digits(digits: Sequence[int], D: int, n: int) -> None:
    if len(digits) != n:
        raise LevelError(f"expected {n} digits, got {len(digits)}")
    for s in digits:
        if not 0 <= s < D:
            raise LevelError(f"level {s} outside 0..{D - 1}")


@dataclass(frozen=True, eq=False)
class QuditRegisterState:
    D: int
    n: int
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        if self.D < 2:
            raise LevelError(f"D must be >= 2, got {self.D}")
        if self.n < 1:
            raise ShapeError(f"n must be >= 1, got {self.n}")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.D**self.n:
            raise ShapeError(f"expected {self.D ** self.n} amplitudes for D={self.D}, n={self.n}, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if self.normalized and abs(self.norm() - 1.0) > NORM_TOL:
            raise NormError(f"state norm {self.norm()!r} differs from 1")

    @property
    def dim(self) -> int:
        return self.D**self.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.D,) * self.n)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, digits: Sequence[int]) -> complex:
        validate_digits(digits, self.D, self.n)
        return complex(self.amplitudes[digits_to_index(digits, self.D)])

    def replace(self, amplitudes, normalized: bool | None = None) -> "QuditRegisterState":
        return QuditRegisterState(self.D, self.n, amplitudes,
                                  self.normalized if normalized is None else normalized)

    def support(self, cutoff: float = 1e-12) -> list[tuple[int, ...]]:
        """Basis digits whose probability exceeds ``cutoff``."""
        idx = np.flatnonzero(self.probabilities() > cutoff)
        return [index_to_digits(int(i), self.D, self.n) for i in idx]

    def __eq__(self, other):
        if not isinstance(other, QuditRegisterState):
            return NotImplemented
        return (self.D, self.n) == (other.D, other.n) and np.array_equal(self.amplitudes, other.amplitudes)

    def __repr__(self):
        return f"QuditRegisterState(D={self.D}, n={self.n}, norm={self.norm():.12g})"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {"D": self.D, "n": self.n, "amplitudes": complex_pairs(self.amplitudes)}

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, obj: dict, normalized: bool = True) -> "QuditRegisterState":
        try:
            D, n = int(obj["D"]), int(obj["n"])
            pairs = np.asarray(obj["amplitudes"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed state object: {exc}") from None
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ShapeError("amplitudes must be a list of [re, im] pairs")
        return cls(D, n, pairs[:, 0] + 1j * pairs[:, 1], normalized)

    @classmethod
    def from_json(cls, text: str, normalized: bool = True) -> "QuditRegisterState":
        return cls.from_dict(json.loads(text), normalized)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "digits", "re", "im", "prob"])
        for i, z in enumerate(self.amplitudes):
            digits = format_digits(index_to_digits(i, self.D, self.n), self.D)
            w.writerow([i, digits, repr(float(z.real)), repr(float(z.imag)), repr(float(abs(z) ** 2))])
        return buf.getvalue()


def basis_state(D: int, n: int, digits: Sequence[int]) -> QuditRegisterState:
    digits = tuple(int(s) for s in digits)
    validate_digits(digits, D, n)
    amps = np.zeros(D**n, dtype=np.complex128)
    amps[digits_to_index(digits, D)] = 1.0
    return QuditRegisterState(D, n, amps)


def overlap(s1: QuditRegisterState, s2: QuditRegisterState) -> complex:
    """<s1|s2>."""
    if (s1.D, s1.n) != (s2.D, s2.n):
        raise ShapeError(f"cannot overlap D={s1.D},n={s1.n} with D={s2.D},n={s2.n}")
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))
