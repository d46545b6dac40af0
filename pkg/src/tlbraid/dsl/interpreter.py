"""Execution of parsed circuit programs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..connector import connect
from ..errors import BraidError, DslRuntimeError
from ..gates import GateParams, apply_gate, make_braid_gate
from ..register import QuditRegisterState, basis_state
from ..states import ghz_levels, ghz_params, run_superposition_chain
from .ast import CircuitProgram, Connect, Dump, Gate, Ghz, Init

# Largest register (D**n amplitudes) the interpreter will allocate.
MAX_STATE_DIM = 1 << 24


@dataclass(frozen=True)
class DumpArtifact:
    index: int
    fmt: str
    path: str | None
    text: str


@dataclass(frozen=True)
class StepReport:
    index: int
    kind: str
    norm: float

    @property
    def drift(self) -> float:
        return abs(self.norm - 1.0)


@dataclass
class RunResult:
    state: QuditRegisterState
    dumps: list[DumpArtifact] = field(default_factory=list)
    steps: list[StepReport] = field(default_factory=list)

    @property
    def max_drift(self) -> float:
        return max((s.drift for s in self.steps), default=0.0)

    def report(self) -> dict:
        return {
            "D": self.state.D,
            "n": self.state.n,
            "steps": [{"index": s.index, "kind": s.kind, "norm": s.norm, "drift": s.drift} for s in self.steps],
            "max_drift": self.max_drift,
            "dumps": [{"index": d.index, "format": d.fmt, "path": d.path} for d in self.dumps],
        }


def render_state(state: QuditRegisterState, fmt: str) -> str:
    if fmt == "csv":
        return state.to_csv()
    return state.to_json() + "\n"


def _load_state(path: Path) -> QuditRegisterState:
    with open(path, encoding="utf-8") as fh:
        return QuditRegisterState.from_dict(json.load(fh))


def execute_program(prog: CircuitProgram, base_dir: str | Path = ".", write_files: bool = True) -> RunResult:
    """Run ``prog`` from its init state (|0...0> when no init is given).

    Relative file paths in ``connect`` and ``dump`` resolve against ``base_dir``.
    """
    base = Path(base_dir)
    D, n = prog.D, prog.n
    if n * math.log(D) > math.log(MAX_STATE_DIM):
        raise DslRuntimeError(0, prog.header.line, f"register D={D}, n={n} exceeds {MAX_STATE_DIM} amplitudes")

    init = next((s for s in prog.statements if isinstance(s, Init)), None)
    state = basis_state(D, n, init.digits if init else (0,) * n)
    result = RunResult(state)

    for index, stmt in enumerate(prog.statements):
        try:
            if isinstance(stmt, Init):
                continue
            if isinstance(stmt, Gate):
                params = GateParams.from_a2(D, n, stmt.k, stmt.q, stmt.l, stmt.a2, stmt.bsign, stmt.phi)
                state = apply_gate(make_braid_gate(params, stmt.lambdas), state)
            elif isinstance(stmt, Ghz):
                gp = ghz_params(stmt.l, stmt.bsigns)
                state, chain = run_superposition_chain(state, stmt.k, 0, ghz_levels(0, stmt.l), gp.a,
                                                       gp.b_signs, history=True)
                for j, st in enumerate(chain[1:-1], start=1):
                    result.steps.append(StepReport(index, f"ghz[{j}]", st.norm()))
            elif isinstance(stmt, Connect):
                psi = _load_state(base / stmt.path)
                if (psi.D, psi.n) != (D, n):
                    raise BraidError(f"state file has D={psi.D}, n={psi.n}; program has D={D}, n={n}")
                state = connect(psi, stmt.digits).apply(state)
            elif isinstance(stmt, Dump):
                text = render_state(state, stmt.fmt)
                if stmt.path and write_files:
                    out = base / stmt.path
                    out.parent.mkdir(parents=True, exist_ok=True)
                    out.write_text(text, encoding="utf-8")
                result.dumps.append(DumpArtifact(index, stmt.fmt, stmt.path, text))
                continue
            kind = f"ghz[{stmt.l}]" if isinstance(stmt, Ghz) else type(stmt).__name__.lower()
            result.steps.append(StepReport(index, kind, state.norm()))
        except (BraidError, OSError, ValueError, KeyError) as exc:
            raise DslRuntimeError(index, stmt.line, f"{type(exc).__name__}: {exc}") from exc

    result.state = state
    return result
