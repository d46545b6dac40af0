"""Syntax tree of ``.braid`` circuit programs and its canonical printer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..gates import Involution
from ..register import format_digits


@dataclass(frozen=True)
class Header:
    D: int
    n: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Init:
    digits: tuple[int, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Gate:
    q: int
    l: int
    k: int
    a2: float
    phi: float = 0.0
    bsign: int = 1
    lambdas: tuple[Involution, ...] | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Ghz:
    l: int
    k: int = 1
    bsigns: tuple[int, ...] | None = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Connect:
    digits: tuple[int, ...]
    path: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Dump:
    fmt: str
    path: str | None = None
    line: int = field(default=0, compare=False)


Statement = Union[Init, Gate, Ghz, Connect, Dump]


@dataclass(frozen=True)
class CircuitProgram:
    header: Header
    statements: tuple[Statement, ...]

    @property
    def D(self) -> int:
        return self.header.D

    @property
    def n(self) -> int:
        return self.header.n


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def _ket(digits, D: int) -> str:
    return f"|{format_digits(digits, D)}>"


def _lam(lam: Involution) -> str:
    if lam.is_identity and lam.kind == "identity":
        return "I"
    return f"X({lam.s},{lam.t})"


def format_statement(stmt: Statement, D: int) -> str:
    if isinstance(stmt, Init):
        return f"init {_ket(stmt.digits, D)}"
    if isinstance(stmt, Gate):
        parts = [f"gate B q={stmt.q} l={stmt.l} k={stmt.k} a2={stmt.a2!r}",
                 f"phi={stmt.phi!r}", f"bsign={_sign(stmt.bsign)}"]
        if stmt.lambdas is not None:
            parts.append("lambda=[" + ",".join(_lam(x) for x in stmt.lambdas) + "]")
        return " ".join(parts)
    if isinstance(stmt, Ghz):
        text = f"ghz l={stmt.l} k={stmt.k}"
        if stmt.bsigns is not None:
            text += " bsigns=" + "".join(_sign(s) for s in stmt.bsigns)
        return text
    if isinstance(stmt, Connect):
        return f"connect {_ket(stmt.digits, D)} from {stmt.path}"
    if isinstance(stmt, Dump):
        return f"dump {stmt.fmt}" + (f" {stmt.path}" if stmt.path else "")
    raise TypeError(f"not a statement: {stmt!r}")


def format_program(prog: CircuitProgram) -> str:
    lines = [f"system D={prog.D} n={prog.n}"]
    lines += [format_statement(s, prog.D) for s in prog.statements]
    return "\n".join(lines) + "\n"
