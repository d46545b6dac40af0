"""Line-oriented parser for ``.braid`` programs.

Grammar (whitespace-insensitive within a line, ``#`` starts a comment)::

    program := header stmt*
    header  := "system" "D" "=" INT "n" "=" INT
    stmt    := init | gate | ghz | connect | dump
    init    := "init" KET
    gate    := "gate" "B" "q" "=" INT "l" "=" INT "k" "=" INT "a2" "=" FLOAT
               ["phi" "=" FLOAT] ["bsign" "=" ("+"|"-")]
               ["lambda" "=" "[" [lam ("," lam)*] "]"]
    lam     := "I" | "X" "(" INT "," INT ")"
    ghz     := "ghz" "l" "=" INT ["k" "=" INT] ["bsigns" "=" ("+"|"-")+]
    connect := "connect" KET "from" FILEPATH
    dump    := "dump" ("json" | "csv") [FILEPATH]

Keyed options may appear in any order.  Kets are ``|012>`` (one character
per qudit, D <= 10) or ``|1,12,3>`` (required for D > 10).
"""

from __future__ import annotations

import math
import re

from ..errors import DslSemanticError, DslSyntaxError
from ..gates import Involution
from .ast import CircuitProgram, Connect, Dump, Gate, Ghz, Header, Init, Statement

_TOKEN = re.compile(
    r"(?P<ws>[ \t\f\v]+)"
    r"|(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[=|<>\[\](),+\-])"
)

_INT = re.compile(r"\d+")


class _Tok:
    __slots__ = ("kind", "text", "col")

    def __init__(self, kind: str, text: str, col: int):
        self.kind, self.text, self.col = kind, text, col


class _Cursor:
    """Lazy tokenizer over one source line."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0
        self._peeked: _Tok | None = None

    def _lex(self) -> _Tok | None:
        while self.pos < len(self.text):
            m = _TOKEN.match(self.text, self.pos)
            if m is None:
                raise DslSyntaxError(self.lineno, self.pos + 1, "a token", self.text[self.pos])
            self.pos = m.end()
            if m.lastgroup != "ws":
                return _Tok(m.lastgroup, m.group(), m.start() + 1)
        return None

    def peek(self) -> _Tok | None:
        if self._peeked is None:
            self._peeked = self._lex()
        return self._peeked

    def next(self) -> _Tok | None:
        tok = self.peek()
        self._peeked = None
        return tok

    @property
    def col(self) -> int:
        tok = self.peek()
        return tok.col if tok else len(self.text) + 1

    def fail(self, expected: str):
        tok = self.peek()
        raise DslSyntaxError(self.lineno, self.col, expected, tok.text if tok else "end of line")

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != text:
            self.fail(repr(text))
        return self.next()

    def at_end(self) -> bool:
        return self.peek() is None

    def rest(self) -> str:
        """Raw remainder of the line, used for file paths."""
        if self._peeked is not None:
            start = self._peeked.col - 1
            self._peeked = None
        else:
            start = self.pos
        self.pos = len(self.text)
        return self.text[start:].strip()

    # -- typed values ---------------------------------------------------------

    def int_(self, what: str = "INT") -> int:
        tok = self.peek()
        if tok is None or tok.kind != "num" or not _INT.fullmatch(tok.text):
            self.fail(what)
        self.next()
        try:
            return int(tok.text)
        except ValueError:
            raise DslSyntaxError(self.lineno, tok.col, "an integer of reasonable size") from None

    def float_(self) -> float:
        sign = 1.0
        tok = self.peek()
        if tok is not None and tok.text in ("+", "-"):
            sign = -1.0 if tok.text == "-" else 1.0
            self.next()
        tok = self.peek()
        if tok is None or tok.kind != "num":
            self.fail("FLOAT")
        self.next()
        return sign * float(tok.text)

    def sign(self) -> int:
        tok = self.peek()
        if tok is None or tok.text not in ("+", "-"):
            self.fail("'+' or '-'")
        self.next()
        return 1 if tok.text == "+" else -1


class _Parser:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        self.header: Header | None = None
        self.statements: list[Statement] = []
        self.seen_op = False
        self.seen_init = False

    def sem(self, lineno: int, col: int, message: str):
        raise DslSemanticError(message, lineno, col)

    def parse(self) -> CircuitProgram:
        for i, raw in enumerate(self.lines, start=1):
            line = raw.rstrip("\r").split("#", 1)[0]
            if not line.strip():
                continue
            cur = _Cursor(line, i)
            head = cur.peek()
            if head.kind != "word":
                cur.fail("a statement keyword")
            if self.header is None:
                if head.text != "system":
                    cur.fail("'system' header")
                self.header = self.parse_header(cur)
            else:
                self.statements.append(self.parse_statement(cur))
            if not cur.at_end():
                cur.fail("end of line")
        if self.header is None:
            raise DslSyntaxError(len(self.lines), 1, "'system' header", "end of input")
        return CircuitProgram(self.header, tuple(self.statements))

    def parse_header(self, cur: _Cursor) -> Header:
        cur.next()
        opts = self.options(cur, {"D": "int", "n": "int"})
        for key in ("D", "n"):
            if key not in opts:
                cur.fail(f"'{key}='")
        D, n = opts["D"][0], opts["n"][0]
        if D < 2:
            self.sem(cur.lineno, opts["D"][1], f"D must be >= 2, got {D}")
        if n < 1:
            self.sem(cur.lineno, opts["n"][1], f"n must be >= 1, got {n}")
        return Header(D, n, cur.lineno)

    def options(self, cur: _Cursor, spec: dict[str, str]) -> dict[str, tuple]:
        """``key=value`` pairs until end of line; returns key -> (value, column)."""
        out: dict[str, tuple] = {}
        while not cur.at_end():
            tok = cur.peek()
            if tok.kind != "word" or tok.text not in spec:
                cur.fail(" or ".join(f"'{k}='" for k in spec if k not in out) or "end of line")
            if tok.text in out:
                self.sem(cur.lineno, tok.col, f"duplicate option {tok.text!r}")
            cur.next()
            cur.expect("=")
            col = cur.col
            kind = spec[tok.text]
            if kind == "int":
                value = cur.int_()
            elif kind == "float":
                value = cur.float_()
            elif kind == "sign":
                value = cur.sign()
            elif kind == "signs":
                value = [cur.sign()]
                while cur.peek() is not None and cur.peek().text in ("+", "-"):
                    value.append(cur.sign())
                value = tuple(value)
            elif kind == "lambdas":
                value = self.lambdas(cur)
            else:  # pragma: no cover
                raise AssertionError(kind)
            out[tok.text] = (value, col)
        return out

    def lambdas(self, cur: _Cursor) -> tuple[Involution, ...]:
        cur.expect("[")
        if cur.peek() is not None and cur.peek().text == "]":
            cur.next()
            return ()
        items = [self.lam(cur)]
        while cur.peek() is not None and cur.peek().text == ",":
            cur.next()
            items.append(self.lam(cur))
        cur.expect("]")
        return tuple(items)

    def lam(self, cur: _Cursor) -> Involution:
        tok = cur.peek()
        if tok is None or tok.text not in ("I", "X"):
            cur.fail("'I' or 'X(s,t)'")
        cur.next()
        if tok.text == "I":
            return Involution.identity()
        cur.expect("(")
        s = cur.int_()
        cur.expect(",")
        t = cur.int_()
        cur.expect(")")
        D = self.header.D
        if s >= D or t >= D:
            self.sem(cur.lineno, tok.col, f"transposition X({s},{t}) uses a level outside 0..{D - 1}")
        return Involution.transposition(s, t)

    def ket(self, cur: _Cursor) -> tuple[int, ...]:
        start = cur.col
        cur.expect("|")
        parts: list[_Tok] = []
        commas = False
        while True:
            tok = cur.peek()
            if tok is None:
                cur.fail("'>'")
            if tok.text == ">":
                cur.next()
                break
            if tok.text == ",":
                commas = True
            elif tok.kind != "num" or not _INT.fullmatch(tok.text):
                cur.fail("a digit, ',' or '>'")
            parts.append(cur.next())
        D, n = self.header.D, self.header.n
        if commas or D > 10:
            groups: list[list[str]] = [[]]
            for p in parts:
                if p.text == ",":
                    groups.append([])
                else:
                    groups[-1].append(p.text)
            if any(len(g) != 1 for g in groups):
                raise DslSyntaxError(cur.lineno, start, "comma-separated levels like |1,12,3>")
            try:
                digits = tuple(int(g[0]) for g in groups)
            except ValueError:
                raise DslSyntaxError(cur.lineno, start, "an integer of reasonable size") from None
        else:
            digits = tuple(int(ch) for p in parts for ch in p.text)
        if len(digits) != n:
            self.sem(cur.lineno, start, f"ket has {len(digits)} levels, register has n = {n}")
        for s in digits:
            if s >= D:
                self.sem(cur.lineno, start, f"level {s} is not below D = {D}")
        return digits

    def check_k(self, cur, opts, k: int):
        n = self.header.n
        if not 1 <= k <= n:
            col = opts["k"][1] if "k" in opts else cur.col
            self.sem(cur.lineno, col, f"pivot position k = {k} outside 1..{n}")

    def parse_statement(self, cur: _Cursor) -> Statement:
        head = cur.next()
        ln = cur.lineno
        D, n = self.header.D, self.header.n
        word = head.text
        if word == "system":
            self.sem(ln, head.col, "duplicate 'system' header")
        if word == "init":
            if self.seen_init:
                self.sem(ln, head.col, "at most one init statement is allowed")
            if self.seen_op:
                self.sem(ln, head.col, "init must come before any gate statement")
            self.seen_init = True
            return Init(self.ket(cur), ln)
        if word == "gate":
            self.seen_op = True
            cur.expect("B")
            opts = self.options(cur, {"q": "int", "l": "int", "k": "int", "a2": "float",
                                      "phi": "float", "bsign": "sign", "lambda": "lambdas"})
            for key in ("q", "l", "k", "a2"):
                if key not in opts:
                    cur.fail(f"'{key}='")
            q, l, k, a2 = (opts[x][0] for x in ("q", "l", "k", "a2"))
            for key, v in (("q", q), ("l", l)):
                if v >= D:
                    self.sem(ln, opts[key][1], f"level {key} = {v} is not below D = {D}")
            if q == l:
                self.sem(ln, opts["l"][1], f"pivot collision: l = q = {q}")
            self.check_k(cur, opts, k)
            if not 0.25 <= a2 <= 1.0:
                self.sem(ln, opts["a2"][1], f"a2 = {a2!r} outside [0.25, 1]")
            phi = opts.get("phi", (0.0, 0))[0]
            if not math.isfinite(phi):
                self.sem(ln, opts["phi"][1], "phi must be finite")
            lambdas = opts.get("lambda", (None, 0))[0]
            if lambdas is not None and len(lambdas) != n - 1:
                self.sem(ln, opts["lambda"][1], f"lambda list needs {n - 1} entries, got {len(lambdas)}")
            return Gate(q, l, k, a2, phi, opts.get("bsign", (1, 0))[0], lambdas, ln)
        if word == "ghz":
            self.seen_op = True
            opts = self.options(cur, {"l": "int", "k": "int", "bsigns": "signs"})
            if "l" not in opts:
                cur.fail("'l='")
            l = opts["l"][0]
            if not 1 <= l <= D - 1:
                self.sem(ln, opts["l"][1], f"GHZ level l = {l} outside 1..{D - 1}")
            k = opts.get("k", (1, 0))[0]
            self.check_k(cur, opts, k)
            bsigns = opts.get("bsigns", (None, 0))[0]
            if bsigns is not None and len(bsigns) != l:
                self.sem(ln, opts["bsigns"][1], f"bsigns needs {l} signs, got {len(bsigns)}")
            return Ghz(l, k, bsigns, ln)
        if word == "connect":
            self.seen_op = True
            digits = self.ket(cur)
            tok = cur.peek()
            if tok is None or tok.text != "from":
                cur.fail("'from'")
            cur.next()
            path = cur.rest()
            if not path:
                cur.fail("FILEPATH")
            return Connect(digits, path, ln)
        if word == "dump":
            tok = cur.peek()
            if tok is None or tok.text not in ("json", "csv"):
                cur.fail("'json' or 'csv'")
            cur.next()
            path = cur.rest() or None
            return Dump(tok.text, path, ln)
        raise DslSyntaxError(ln, head.col, "one of init, gate, ghz, connect, dump", word)


def parse_program(text: str | bytes) -> CircuitProgram:
    """Parse program source; raises ``DslSyntaxError`` or ``DslSemanticError``."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    return _Parser(text).parse()
