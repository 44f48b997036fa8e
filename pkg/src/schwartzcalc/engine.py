"""Expressions over the spaces: parsing, result-space inference and verdicts.

Grammar (whitespace insignificant)::

    expr  := unary (('*' | 'conv') unary)*          left-associative
    unary := 'fourier' '(' expr ')'
           | 'd' '[' int (',' int)* ']' '(' expr ')'
           | '(' NAME ':' SPACE ')'                 atom
           | '(' expr ')'

SPACE is a space token such as ``D``, ``OC'``, ``D_Lp[1.5]`` or ``D'_Lq[inf]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DimensionMismatch, NotAdmissible, ParseError, UnknownSpace
from .spaces import (Kind, Space, fourier_image, includes, is_fourier_mapped,
                     least_common_superspace, modeled_spaces, parse_space)
from .table import (ContinuityVerdict, MapFact, Op, PropRef, Verdict, HYPO_REF_LABEL,
                    convolutor_space, find_continuity, find_discontinuity, multiplier_space)


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Atom:
    name: str
    declared: Space

    def __str__(self):
        return f"({self.name}:{self.declared.token})"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Conv:
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return f"({self.left} conv {self.right})"


@dataclass(frozen=True)
class Fourier:
    inner: "Expr"

    def __str__(self):
        return f"fourier({self.inner})"


@dataclass(frozen=True)
class Derivative:
    inner: "Expr"
    index: tuple[int, ...]

    def __str__(self):
        return f"d[{','.join(map(str, self.index))}]({self.inner})"


Expr = Union[Atom, Mul, Conv, Fourier, Derivative]


# ---------------------------------------------------------------------------
# Parser

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()\[\],:*]))")


class _Parser:
    def __init__(self, text: str, dimension: int):
        self.text = text
        self.pos = 0
        self.n = dimension

    def error(self, msg, pos=None):
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        """(kind, value, start) of the next token without consuming it."""
        self.skip_ws()
        if self.pos >= len(self.text):
            return ("eof", "", self.pos)
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return ("bad", self.text[self.pos], self.pos)
        kind = m.lastgroup
        return (kind, m.group(kind), self.pos)

    def take(self):
        kind, value, start = self.peek()
        if kind in ("eof", "bad"):
            raise self.error(f"unexpected {'end of input' if kind == 'eof' else repr(value)}")
        self.pos = _TOKEN.match(self.text, start).end()
        return kind, value, start

    def expect(self, sym):
        kind, value, start = self.peek()
        if value != sym or kind not in ("sym", "name"):
            found = "end of input" if kind == "eof" else repr(value)
            raise self.error(f"expected {sym!r}, found {found}")
        self.take()

    def parse(self) -> Expr:
        e = self.expr()
        kind, value, start = self.peek()
        if kind != "eof":
            raise self.error(f"unexpected {value!r}")
        return e

    def expr(self) -> Expr:
        left = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.take()
                left = Mul(left, self.unary())
            elif kind == "name" and value == "conv":
                self.take()
                left = Conv(left, self.unary())
            else:
                return left

    def unary(self) -> Expr:
        kind, value, start = self.peek()
        if kind == "name" and value == "fourier":
            self.take()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Fourier(inner)
        if kind == "name" and value == "d":
            self.take()
            self.expect("[")
            index = [self.integer()]
            while self.peek()[1] == ",":
                self.take()
                index.append(self.integer())
            self.expect("]")
            if len(index) != self.n:
                raise self.error(f"multi-index has length {len(index)}, expected {self.n}", start)
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Derivative(inner, tuple(index))
        if kind == "sym" and value == "(":
            self.take()
            k2, v2, _ = self.peek()
            if k2 == "name":
                save = self.pos
                self.take()
                if self.peek()[1] == ":":
                    self.take()
                    return Atom(v2, self.space_token())
                self.pos = save
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if kind == "eof" else repr(value)
        raise self.error(f"expected an operand, found {found}")

    def integer(self) -> int:
        kind, value, _ = self.peek()
        if kind != "num":
            raise self.error("expected a nonnegative integer")
        self.take()
        return int(value)

    def space_token(self) -> Space:
        self.skip_ws()
        start = self.pos
        end = self.text.find(")", start)
        if end < 0:
            raise self.error("unterminated atom, expected ')'")
        token = self.text[start:end].strip()
        if not token:
            raise self.error("missing space token")
        try:
            space = parse_space(token, self.n)
        except UnknownSpace as exc:
            raise UnknownSpace(f"{exc} at position {start}") from None
        self.pos = end + 1
        return space


def parse(text: str, dimension: int = 1) -> Expr:
    return _Parser(text, dimension).parse()


# ---------------------------------------------------------------------------
# Inference

@dataclass(frozen=True)
class TraceEntry:
    node: str
    rule: str
    ref: str
    space: str
    verdict: str

    def to_dict(self):
        return {"node": self.node, "rule": self.rule, "ref": self.ref, "space": self.space,
                "verdict": self.verdict}


@dataclass(frozen=True)
class TypedResult:
    space: Space
    verdict: ContinuityVerdict
    trace: tuple[TraceEntry, ...] = ()

    def to_dict(self):
        return {"space": self.space.token, "verdict": self.verdict.value.value,
                "ref": self.verdict.ref.label, "trace": [t.to_dict() for t in self.trace]}


def _table_space(e: Space, op: Op) -> Space:
    return multiplier_space(e) if op is Op.MULTIPLY else convolutor_space(e)


def _has_row(e: Space) -> bool:
    try:
        multiplier_space(e)
        return True
    except Exception:
        return False


def _smaller(x: Space, y: Space) -> Space:
    """The <=-smaller of two candidates, ``x`` on ties or when incomparable."""
    return y if includes(y, x) and not includes(x, y) else x


def result_space(a: Space, b: Space, op: Op) -> tuple[Space, str]:
    """Natural result of ``a op b`` and the admissibility rule that produced it."""
    if a.dimension != b.dimension:
        raise DimensionMismatch("operands live over different dimensions")
    fires = []
    if _has_row(a) and includes(b, _table_space(a, op)):
        fires.append(a)
    if _has_row(b) and includes(a, _table_space(b, op)):
        fires.append(b)
    if fires:
        pick = fires[0] if len(fires) == 1 else _smaller(fires[0], fires[1])
        return pick, "table"
    # Embed one operand into a table row whose multiplier/convolutor space holds the other.
    rows = [x for x in modeled_spaces(a.dimension, (a, b)) if _has_row(x)]
    cands = [x for x in rows
             if (includes(a, x) and includes(b, _table_space(x, op)))
             or (includes(b, x) and includes(a, _table_space(x, op)))]
    least = [x for x in cands if all(includes(x, y) for y in cands)]
    if least:
        return least[0], "embedding"
    sym = "*" if op is Op.MULTIPLY else "conv"
    table = "M" if op is Op.MULTIPLY else "C"
    raise NotAdmissible(f"{a.token} {sym} {b.token}: neither {b.token} <= {table}({a.token}) "
                        f"nor {a.token} <= {table}({b.token}), and no table row absorbs the pair")


def _lookup(a: Space, b: Space, op: Op, target: Space) -> ContinuityVerdict:
    fact = find_discontinuity(a, b, op, target)
    if fact is not None:
        return ContinuityVerdict(Verdict.DISCONTINUOUS, target, fact.ref)
    fact = find_continuity(a, b, op, target)
    if fact is not None:
        return ContinuityVerdict(Verdict.CONTINUOUS, target, fact.ref)
    return ContinuityVerdict(Verdict.HYPOCONTINUOUS_ONLY_KNOWN, target, PropRef(HYPO_REF_LABEL))


def _combine(verdicts: list[ContinuityVerdict], target: Space) -> ContinuityVerdict:
    for v in verdicts:
        if v.value is Verdict.DISCONTINUOUS:
            return ContinuityVerdict(v.value, target, v.ref)
    if all(v.value is Verdict.CONTINUOUS for v in verdicts):
        ref = verdicts[-1].ref if verdicts else PropRef("identity")
        return ContinuityVerdict(Verdict.CONTINUOUS, target, ref)
    return ContinuityVerdict(Verdict.HYPOCONTINUOUS_ONLY_KNOWN, target, PropRef(HYPO_REF_LABEL))


def infer(e: Expr) -> TypedResult:
    trace: list[TraceEntry] = []
    binary: list[ContinuityVerdict] = []

    def walk(node) -> Space:
        if isinstance(node, Atom):
            trace.append(TraceEntry(str(node), "atom", "identity", node.declared.token, "Continuous"))
            return node.declared
        if isinstance(node, (Mul, Conv)):
            a, b = walk(node.left), walk(node.right)
            op = Op.MULTIPLY if isinstance(node, Mul) else Op.CONVOLVE
            space, rule = result_space(a, b, op)
            v = _lookup(a, b, op, space)
            binary.append(v)
            trace.append(TraceEntry(str(node), f"{op.value}:{rule}", v.ref.label, space.token, v.value.value))
            return space
        if isinstance(node, Fourier):
            inner = walk(node.inner)
            space = fourier_image(inner)
            trace.append(TraceEntry(str(node), "fourier", "identity", space.token, "Continuous"))
            return space
        if isinstance(node, Derivative):
            inner = walk(node.inner)
            if len(node.index) != inner.dimension:
                raise DimensionMismatch("multi-index length differs from the dimension")
            trace.append(TraceEntry(str(node), "derivative", "identity", inner.token, "Continuous"))
            return inner
        raise TypeError(f"not an expression node: {node!r}")

    space = walk(e)
    return TypedResult(space, _combine(binary, space), tuple(trace))


def classify_map(a: Space, b: Space, op: Op, target: Space) -> ContinuityVerdict:
    """Verdict for the bilinear map ``a x b -> target``; the pair must be admissible."""
    if len({a.dimension, b.dimension, target.dimension}) != 1:
        raise DimensionMismatch("spaces live over different dimensions")
    result_space(a, b, op)
    return _lookup(a, b, op, target)


# ---------------------------------------------------------------------------
# The fourteen maps of the Ehrenpreis list

_K = Kind
EHRENPREIS_MAPS = (
    (1, _K.D, _K.D, Op.CONVOLVE, _K.D),
    (2, _K.D, _K.EPRIME, Op.CONVOLVE, _K.EPRIME),
    (3, _K.EPRIME, _K.EPRIME, Op.CONVOLVE, _K.EPRIME),
    (4, _K.D, _K.E, Op.CONVOLVE, _K.E),
    (5, _K.D, _K.DPRIME, Op.CONVOLVE, _K.E),
    (6, _K.D, _K.EPRIME, Op.CONVOLVE, _K.D),
    (7, _K.E, _K.EPRIME, Op.CONVOLVE, _K.E),
    (8, _K.DPRIME, _K.EPRIME, Op.CONVOLVE, _K.DPRIME),
    (9, _K.DPRIME, _K.D, Op.CONVOLVE, _K.DPRIME),
    (10, _K.E, _K.EPRIME, Op.CONVOLVE, _K.DPRIME),
    (11, _K.D, _K.D, Op.MULTIPLY, _K.D),
    (12, _K.E, _K.E, Op.MULTIPLY, _K.E),
    (13, _K.DPRIME, _K.E, Op.MULTIPLY, _K.DPRIME),
    (14, _K.D, _K.DPRIME, Op.MULTIPLY, _K.EPRIME),
)


@dataclass(frozen=True)
class AuditRow:
    item: int
    a: Space
    b: Space
    op: Op
    target: Space
    verdict: ContinuityVerdict

    def to_dict(self):
        return {"item": self.item, "a": self.a.token, "b": self.b.token, "op": self.op.value,
                "target": self.target.token, "verdict": self.verdict.value.value,
                "ref": self.verdict.ref.label}

    def text(self) -> str:
        sym = "*" if self.op is Op.MULTIPLY else "conv"
        return (f"{self.item:>2}. {self.a.token} x {self.b.token} --{sym}--> {self.target.token}: "
                f"{self.verdict.value.value} ({self.verdict.ref.label})")


def audit_ehrenpreis(dimension: int = 1) -> list[AuditRow]:
    rows = []
    for item, a, b, op, t in EHRENPREIS_MAPS:
        a, b, t = Space(a, dimension), Space(b, dimension), Space(t, dimension)
        rows.append(AuditRow(item, a, b, op, t, classify_map(a, b, op, t)))
    return rows
