"""Scenario language: tokenizer, recursive-descent parser and canonical printer.

A scenario names an ideal, a sequence and a rough family, then lists what to compute,
optional oracle settings and optional expected sets::

    name "alternating";
    ideal Fin;
    seq alt;
    family ball(r=const 3, open);
    compute gamma, lim;
    oracle(prefix=10000, grid_step=1/128, range=[-4,4]);
    expect gamma = (-4,4);

The grammar is given in EBNF in the README.  Every parse failure raises a single
:class:`ParseError` carrying the line and column of the offending token.
"""

from __future__ import annotations

import re
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction

from .exact_sets import INF, Interval, RealSet, fmt_num, interval, naturals, points, tail
from .ideals import IdealModel
from .omega_sets import (
    AP, ALL, EVENS, NONE, ODDS, Col, ColsFrom, Finite, IndexSetExpr, Inter, Not, Range,
    Row, Stair, Union,
)
from .piecewise import Piece, RadiusFunction
from .rough_families import Ball, Degenerate, ModelFamily, Region, RoughFamily, Table
from .sequences import (
    INDEXINGS, Assignment, Cell, DenseCover, Natural, SequenceSpec, Stream, VanDerCorput,
    alternating, constant, fubini, geometric, periodic,
)

COMPUTATIONS = ("all", "lim", "limstar", "gamma", "lambda", "inner", "closure", "m")
EXPECTABLE = ("lim", "limstar", "gamma", "lambda", "inner", "closure")
ORACLE_KEYS = ("prefix", "grid_step", "range", "theta", "collar", "seed")


class ParseError(Exception):
    """A positioned syntax or type error."""

    def __init__(self, line: int, column: int, token: str, expected: tuple[str, ...],
                 message: str):
        self.line, self.column, self.token = line, column, token
        self.expected, self.message = tuple(expected), message
        super().__init__(f"{line}:{column}: {message}")


# -- tokens ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # NUM | IDENT | STR | SYM | EOF
    text: str
    line: int
    col: int

    def show(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<NUM>\d+(?:\.\d+)?)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STR>"[^"\n]*")
  | (?P<SYM>->|\.\.|>=|[{}()\[\],;:=|&!/*+\-∪∅])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, text[pos], (), f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, col))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


# -- scenario --------------------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    ideal: IdealModel
    seq: SequenceSpec
    family: RoughFamily
    compute: tuple[str, ...] = ("all",)
    oracle: tuple[tuple[str, object], ...] = ()
    expect: tuple[tuple[str, RealSet], ...] = ()
    name: str | None = None
    space: str = "real"

    def oracle_settings(self) -> dict:
        return dict(self.oracle)

    def wants(self, what: str) -> bool:
        return what in self.compute or ("all" in self.compute and what in
                                        ("lim", "limstar", "gamma", "lambda"))


# -- parser ----------------------------------------------------------------------------

class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("SYM", "IDENT") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def fail(self, expected, message: str | None = None, tok: Token | None = None):
        t = tok or self.tok
        expected = tuple(expected)
        if message is None:
            want = " or ".join(f"'{e}'" for e in expected)
            message = f"expected {want}, found {t.show()}"
        raise ParseError(t.line, t.col, t.text, expected, message)

    def expect(self, *texts: str) -> Token:
        if not self.at(*texts):
            self.fail(texts)
        return self.advance()

    def accept(self, *texts: str) -> Token | None:
        return self.advance() if self.at(*texts) else None

    @contextmanager
    def semantic(self, tok: Token):
        """Re-raise constructor validation errors at ``tok``."""
        try:
            yield
        except ParseError:
            raise
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(tok.line, tok.col, tok.text, (), str(e)) from None

    def end(self):
        if self.tok.kind != "EOF":
            self.fail(("end of input",))

    # numbers
    def integer(self) -> int:
        neg = self.accept("-") is not None
        t = self.tok
        if t.kind != "NUM" or "." in t.text:
            self.fail(("integer",))
        self.advance()
        return -int(t.text) if neg else int(t.text)

    def nat(self) -> int:
        t = self.tok
        if t.kind != "NUM" or "." in t.text:
            self.fail(("natural number",))
        self.advance()
        return int(t.text)

    def _unsigned(self) -> Fraction:
        t = self.tok
        if t.kind != "NUM":
            self.fail(("number",))
        self.advance()
        v = Fraction(t.text)
        if self.at("/") and self.peek().kind == "NUM":
            self.advance()
            d = self.advance()
            with self.semantic(d):
                if "." in d.text:
                    raise ValueError("denominator must be an integer")
                v = v / int(d.text)
        return v

    def number(self) -> Fraction:
        neg = self.accept("-") is not None
        v = self._unsigned()
        return -v if neg else v

    def extended(self):
        """A number or +-inf."""
        neg = self.accept("-") is not None
        if self.accept("inf"):
            return -INF if neg else INF
        v = self._unsigned()
        return -v if neg else v

    def boolean(self) -> bool:
        return self.expect("true", "false").text == "true"

    # sets
    def interval_parts(self):
        left = self.expect("[", "(")
        lo = self.extended()
        self.expect(",")
        hi = self.extended()
        right = self.expect("]", ")")
        return left, lo, hi, left.text == "[", right.text == "]"

    def real_set(self) -> RealSet:
        out = self.set_atom()
        while self.accept("∪", "|"):
            out = out | self.set_atom()
        return out

    def set_atom(self) -> RealSet:
        t = self.tok
        if self.accept("∅", "empty"):
            return RealSet.empty()
        if self.at("[", "("):
            left, lo, hi, lc, hc = self.interval_parts()
            with self.semantic(left):
                return interval(lo, hi, lc, hc)
        if self.accept("{"):
            pts = []
            if not self.at("}"):
                pts.append(self.number())
                while self.accept(","):
                    pts.append(self.number())
            self.expect("}")
            return points(*pts)
        if self.accept("tail"):
            self.expect("(")
            c = self.number()
            self.expect(",")
            q = self.number()
            opts = {"from": 0, "closed": False, "center": Fraction(0)}
            while self.accept(","):
                key = self.expect("from", "start", "closed", "center").text
                self.expect("=")
                if key in ("from", "start"):
                    opts["from"] = self.nat()
                elif key == "closed":
                    opts["closed"] = self.boolean()
                else:
                    opts["center"] = self.number()
            self.expect(")")
            with self.semantic(t):
                return tail(c, q, opts["from"], opts["closed"], opts["center"])
        if self.accept("nat"):
            k = 0
            if self.accept("("):
                self.expect("from")
                self.expect("=")
                k = self.nat()
                self.expect(")")
            return naturals(k)
        self.fail(("interval", "{", "tail", "nat", "∅"),
                  f"expected a set, found {t.show()}")

    # index sets
    def index(self) -> IndexSetExpr:
        parts = [self.index_term()]
        while self.accept("|"):
            parts.append(self.index_term())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def index_term(self) -> IndexSetExpr:
        parts = [self.index_factor()]
        while self.accept("&"):
            parts.append(self.index_factor())
        return parts[0] if len(parts) == 1 else Inter(tuple(parts))

    def index_factor(self) -> IndexSetExpr:
        if self.accept("!"):
            return Not(self.index_factor())
        if self.accept("("):
            e = self.index()
            self.expect(")")
            return e
        return self.index_atom()

    def index_atom(self) -> IndexSetExpr:
        t = self.tok
        simple = {"all": ALL, "none": NONE, "evens": EVENS, "odds": ODDS}
        if t.kind == "IDENT" and t.text in simple:
            self.advance()
            return simple[t.text]
        atoms = ("fin", "ap", "range", "col", "cols", "row", "stair")
        if not (t.kind == "IDENT" and t.text in atoms):
            self.fail(tuple(simple) + atoms + ("!", "("),
                      f"expected an index set, found {t.show()}")
        self.advance()
        with self.semantic(t):
            if t.text == "fin":
                self.expect("{")
                elems = []
                if not self.at("}"):
                    elems.append(self.nat())
                    while self.accept(","):
                        elems.append(self.nat())
                self.expect("}")
                return Finite(frozenset(elems))
            self.expect("(")
            if t.text in ("ap", "range"):
                a = self.nat()
                self.expect(",")
                b = self.nat()
                out = AP(a, b) if t.text == "ap" else Range(a, b)
            elif t.text in ("col", "row"):
                k = self.nat()
                out = Col(k) if t.text == "col" else Row(k)
            elif t.text == "cols":
                k0 = self.nat()
                self.expect("..")
                step = 1
                if self.accept(","):
                    self.expect("step")
                    self.expect("=")
                    step = self.nat()
                out = ColsFrom(k0, step)
            else:
                out = self.stair_body()
            self.expect(")")
            return out

    def stair_body(self) -> Stair:
        self.expect("m")
        self.expect(">=")
        slope, offset = 0, 0
        if self.tok.kind == "NUM":
            n = self.nat()
            if self.accept("k"):
                slope = n
            else:
                offset = n
        elif self.accept("k"):
            slope = 1
        elif self.accept("-"):
            offset = -self.nat()
        else:
            self.fail(("k", "integer"))
        if slope and self.at("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
            offset = sign * self.nat()
        parity = None
        if self.accept(","):
            parity = 0 if self.expect("even", "odd").text == "even" else 1
        return Stair(slope, offset, parity)

    # sequences
    def stream(self) -> Stream:
        t = self.tok
        if self.accept("stream"):
            self.expect("(")
            a = self.number()
            self.expect(",")
            b = self.number()
            self.expect(",")
            q = self.number()
            by = "n"
            if self.accept(","):
                self.expect("by")
                self.expect("=")
                by = self.expect(*INDEXINGS).text
            self.expect(")")
            with self.semantic(t):
                return Stream(a, b, q, by)
        return Stream(self.number())

    def sequence(self) -> SequenceSpec:
        t = self.tok
        names = ("const", "alt", "geo", "nat", "vdc", "fubini", "periodic", "dense", "assign")
        if not (t.kind == "IDENT" and t.text in names):
            self.fail(names, f"expected a sequence, found {t.show()}")
        self.advance()
        with self.semantic(t):
            if t.text == "alt":
                return alternating()
            if t.text == "nat":
                return Natural()
            if t.text == "vdc":
                return VanDerCorput()
            if t.text == "fubini":
                return fubini()
            if t.text == "assign":
                return self.assign_body()
            self.expect("(")
            if t.text == "const":
                out = constant(self.number())
            elif t.text == "geo":
                c = self.number()
                self.expect(",")
                out = geometric(c, self.number())
            elif t.text == "dense":
                out = DenseCover(self.real_set())
            else:
                pre = self.number_list()
                self.expect(",")
                out = periodic(pre, self.number_list())
            self.expect(")")
            return out

    def number_list(self) -> list[Fraction]:
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.number())
            while self.accept(","):
                out.append(self.number())
        self.expect("]")
        return out

    def assign_body(self) -> Assignment:
        self.expect("{")
        cells = []
        while not self.at("default"):
            idx = self.index()
            self.expect("->")
            cells.append(Cell(idx, self.stream()))
            self.expect(",")
        self.expect("default")
        d = self.number()
        self.expect("}")
        return Assignment(tuple(cells), d)

    # radius functions and families
    def radius(self) -> RadiusFunction:
        t = self.tok
        if self.accept("const"):
            return RadiusFunction.constant(self.number())
        if not self.accept("pw"):
            self.fail(("const", "pw"))
        self.expect("{")
        pieces = [self.piece()]
        while self.accept(";"):
            pieces.append(self.piece())
        self.expect("}")
        with self.semantic(t):
            return RadiusFunction(tuple(pieces))

    def piece(self) -> Piece:
        left, lo, hi, lc, hc = self.interval_parts()
        self.expect(":")
        alpha = beta = gamma = Fraction(0)
        sign = -1 if self.accept("-") else 1
        while True:
            if self.accept("x"):
                beta += sign
            else:
                v = sign * self._unsigned()
                if self.accept("*"):
                    self.expect("x")
                    beta += v
                elif self.at("/") and self.peek().text == "x":
                    self.advance()
                    self.advance()
                    gamma += v
                else:
                    alpha += v
            if not self.at("+", "-"):
                break
            sign = -1 if self.advance().text == "-" else 1
        with self.semantic(left):
            return Piece(lo, hi, lc, hc, alpha, beta, gamma)

    def family(self) -> RoughFamily:
        t = self.tok
        if self.accept("degenerate"):
            return Degenerate()
        if self.accept("model"):
            return ModelFamily()
        if self.accept("ball"):
            self.expect("(")
            self.expect("r")
            self.expect("=")
            r = self.radius()
            self.expect(",")
            closed = self.expect("closed", "open").text == "closed"
            self.expect(")")
            with self.semantic(t):
                return Ball(r, closed)
        if self.accept("table"):
            return self.table_body(t)
        self.fail(("degenerate", "ball", "table", "model"),
                  f"expected a family, found {t.show()}")

    def table_body(self, t: Token) -> Table:
        self.expect("{")
        overrides, regions, default = [], [], Degenerate()
        while True:
            if self.accept("default"):
                default = self.family()
            elif self.accept("region"):
                left, lo, hi, lc, hc = self.interval_parts()
                self.expect("add")
                regions.append(Region(Interval(lo, hi, lc, hc), self.real_set()))
            else:
                e = self.tok
                eta = self.number()
                self.expect("->")
                S = self.real_set()
                with self.semantic(e):
                    if not S.contains(eta):
                        raise ValueError(f"F_eta must contain eta; violated at {fmt_num(eta)}")
                overrides.append((eta, S))
            if not self.accept(","):
                break
        self.expect("}")
        with self.semantic(t):
            return Table(tuple(overrides), tuple(regions), default)

    # scenario
    def ideal(self) -> IdealModel:
        t = self.expect("Fin", "Z", "FinxFin")
        pairing = "cantor"
        if t.text == "FinxFin" and self.accept("("):
            self.expect("pairing")
            self.expect("=")
            p = self.tok
            if p.kind != "IDENT":
                self.fail(("cantor",))
            pairing = self.advance().text
            self.expect(")")
        with self.semantic(t):
            return IdealModel(t.text, pairing)

    def oracle_block(self) -> tuple[tuple[str, object], ...]:
        self.expect("(")
        out, seen = [], set()
        if not self.at(")"):
            while True:
                k = self.expect(*ORACLE_KEYS)
                if k.text in seen:
                    self.fail((), f"duplicate oracle setting {k.text!r}", k)
                seen.add(k.text)
                self.expect("=")
                if k.text == "range":
                    left, lo, hi, _, _ = self.interval_parts()
                    with self.semantic(left):
                        if not lo < hi or INF in (abs(lo), abs(hi)):
                            raise ValueError("oracle range must be a bounded nonempty interval")
                    v = (lo, hi)
                elif k.text in ("prefix", "seed"):
                    v = self.nat()
                else:
                    v = self.number()
                out.append((k.text, v))
                if not self.accept(","):
                    break
        self.expect(")")
        return tuple(out)

    def separator(self):
        self.accept(";")

    def scenario(self) -> Scenario:
        name, space = None, "real"
        if self.accept("name"):
            t = self.tok
            if t.kind != "STR":
                self.fail(("string",))
            name = self.advance().text[1:-1]
            self.separator()
        if self.accept("space"):
            space = self.expect("real", "model").text
            self.separator()
        if not self.at("ideal"):
            self.fail(("ideal", "name", "space"),
                      f"expected 'ideal', found {self.tok.show()}")
        self.advance()
        I = self.ideal()
        self.separator()
        self.expect("seq")
        x = self.sequence()
        self.separator()
        self.expect("family")
        F = self.family()
        self.separator()
        compute: tuple[str, ...] = ("all",)
        if self.accept("compute"):
            items = [self.expect(*COMPUTATIONS).text]
            while self.accept(","):
                items.append(self.expect(*COMPUTATIONS).text)
            compute = tuple(items)
            self.separator()
        oracle: tuple = ()
        if self.accept("oracle"):
            oracle = self.oracle_block()
            self.separator()
        expect = []
        while self.accept("expect"):
            which = self.expect(*EXPECTABLE).text
            self.expect("=")
            expect.append((which, self.real_set()))
            self.separator()
        if self.tok.kind != "EOF":
            self.fail(("compute", "oracle", "expect", "end of input"),
                      f"expected 'compute', 'oracle', 'expect' or end of input, found {self.tok.show()}")
        if space == "model" or getattr(x, "space", "real") == "model" or F.space.name == "model":
            space = "model"
            if isinstance(x, Assignment) and x.space != "model":
                x = replace(x, space="model")
        return Scenario(I, x, F, compute, oracle, tuple(expect), name, space)


def _run(text: str, rule: str):
    p = Parser(text)
    out = getattr(p, rule)()
    p.end()
    return out


def parse_scenario(text: str) -> Scenario:
    return _run(text, "scenario")


def parse_set(text: str) -> RealSet:
    return _run(text, "real_set")


def parse_index(text: str) -> IndexSetExpr:
    return _run(text, "index")


def parse_seq(text: str) -> SequenceSpec:
    return _run(text, "sequence")


def parse_family(text: str) -> RoughFamily:
    return _run(text, "family")


def parse_radius(text: str) -> RadiusFunction:
    return _run(text, "radius")


# -- printer ---------------------------------------------------------------------------

def print_seq(x: SequenceSpec) -> str:
    if not isinstance(x, Assignment):
        return x.to_text()
    if x.label is not None:
        try:
            if parse_seq(x.label) == replace(x, space="real") or parse_seq(x.label) == x:
                return x.label
        except ParseError:
            pass
    cells = "".join(f"{c.index.to_text()} -> {c.stream.to_text()}, " for c in x.cells)
    return f"assign{{ {cells}default {fmt_num(x.default)} }}"


def _print_oracle_value(k: str, v) -> str:
    if k == "range":
        return f"[{fmt_num(v[0])},{fmt_num(v[1])}]"
    return fmt_num(v) if isinstance(v, Fraction) else str(v)


def print_scenario(sc: Scenario) -> str:
    lines = []
    if sc.name is not None:
        lines.append(f'name "{sc.name}";')
    if sc.space != "real":
        lines.append(f"space {sc.space};")
    lines.append(f"ideal {sc.ideal.to_text()};")
    lines.append(f"seq {print_seq(sc.seq)};")
    lines.append(f"family {sc.family.to_text()};")
    lines.append(f"compute {', '.join(sc.compute)};")
    if sc.oracle:
        kv = ", ".join(f"{k}={_print_oracle_value(k, v)}" for k, v in sc.oracle)
        lines.append(f"oracle({kv});")
    for which, S in sc.expect:
        lines.append(f"expect {which} = {S.to_text()};")
    return "\n".join(lines) + "\n"
