"""The ``.braid`` circuit language: parser, printer and interpreter."""

from .ast import CircuitProgram, Connect, Dump, Gate, Ghz, Header, Init, format_program
from .interpreter import RunResult, execute_program, render_state
from .parser import parse_program

__all__ = [
    "CircuitProgram", "Connect", "Dump", "Gate", "Ghz", "Header", "Init", "RunResult",
    "execute_program", "format_program", "parse_program", "render_state",
]
