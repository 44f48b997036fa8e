"""Text literals for functions, distributions and seminorm specs (CLI input).

Function grammar::

    sum     := product (('+' | '-') product)*
    product := unary ('*' unary)*
    unary   := '-' unary | 'd' '[' int (',' int)* ']' unary | primary
    primary := NUMBER | COMPLEX | '(' sum ')' | 'chirp' | 'x'
             | family '(' NUMBER (',' NUMBER)* ')'      bump plateau gauss cexp const weight poly
             | ('dilate' | 'translate') '(' sum ',' NUMBER (',' NUMBER)* ')'
             | 'poly' '{' multi-index ':' coeff, ... '}'

Distributions are sums of ``[coef *] [d[...]] (dirac(x0, ...) | fn(<function>))``.
Seminorms: ``pS(m,beta)``, ``pLp(m,p)``, ``pOM(m,<function>)``, ``pE(m,K)``, ``pD(m0,eps0)``.
Every ``literal()`` produced by the library parses back to an equal object.
"""

from __future__ import annotations

import ast
import math
import re

from . import distributions as dist
from . import functions as fn
from . import seminorms as sn
from .errors import ParseError
from .functions import SymbolicFunction

_TOKEN = re.compile(r"""\s*(?:
      (?P<cnum>\(\s*[-+]?[\d.]+(?:e[-+]?\d+)?\s*[-+]\s*[\d.]+(?:e[-+]?\d+)?j\s*\))
    | (?P<num>(?:\d+\.?\d*|\.\d+)(?:e[-+]?\d+)?j?|inf)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<sym>[()\[\]{},:*+\-])
    )""", re.X)

_FAMILIES = {
    "bump": fn.bump, "plateau": fn.plateau, "gauss": fn.gauss, "weight": fn.weight,
}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {stripped[pos]!r}", pos, text)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self, offset: int = 0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos, self.text)

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value:
            self.i += 1
            return True
        return False

    def number(self) -> complex:
        sign = -1 if self.accept("-") else 1
        kind, val, pos = self.next()
        if kind == "cnum":
            return sign * complex(val.replace(" ", "").strip("()"))
        if kind != "num":
            raise ParseError(f"expected a number, found {val or 'end of input'!r}", pos, self.text)
        return sign * (math.inf if val == "inf" else complex(val) if val.endswith("j") else float(val))

    def real(self) -> float:
        pos = self.peek()[2]
        v = self.number()
        if isinstance(v, complex):
            if v.imag:
                raise ParseError("expected a real number", pos, self.text)
            v = v.real
        return float(v)

    def integer(self) -> int:
        pos = self.peek()[2]
        v = self.real()
        if v != int(v) or v < 0:
            raise ParseError("expected a nonnegative integer", pos, self.text)
        return int(v)

    def index(self) -> tuple[int, ...]:
        self.expect("[")
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        self.expect("]")
        return tuple(out)

    def done(self):
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos, self.text)


# ---------------------------------------------------------------------------
# Functions

class _FunctionParser:
    def __init__(self, lex: _Lexer, n: int):
        self.lex, self.n = lex, n

    def sum(self) -> SymbolicFunction:
        out = self.product()
        while self.lex.peek()[1] in ("+", "-"):
            op = self.lex.next()[1]
            rhs = self.product()
            out = fn.add(out, rhs if op == "+" else fn.scale(rhs, -1))
        return out

    def product(self) -> SymbolicFunction:
        out = self.unary()
        while self.lex.accept("*"):
            out = fn.product(fn._lift(out, self.n), fn._lift(self.unary(), self.n))
        return fn._lift(out, self.n)

    def unary(self):
        lex = self.lex
        if lex.peek()[1] == "-" and lex.peek(1)[0] not in ("num", "cnum"):
            lex.next()
            return fn.scale(fn._lift(self.unary(), self.n), -1)
        if lex.peek()[1] == "d" and lex.peek(1)[1] == "[":
            lex.next()
            pos = lex.peek()[2]
            alpha = lex.index()
            if len(alpha) != self.n:
                raise ParseError(f"multi-index has {len(alpha)} entries, dimension is {self.n}", pos, lex.text)
            return fn.derivative(fn._lift(self.unary(), self.n), alpha)
        return self.primary()

    def primary(self):
        lex = self.lex
        kind, val, pos = lex.peek()
        if kind in ("num", "cnum") or val == "-":
            v = lex.number()
            return fn.const(v, self.n)
        if val == "(":
            lex.next()
            out = self.sum()
            lex.expect(")")
            return out
        if kind != "name":
            raise ParseError(f"expected a function, found {val or 'end of input'!r}", pos, lex.text)
        lex.next()
        if val == "chirp":
            return fn.chirp(self.n)
        if val == "x":
            return fn.Polynomial.from_dict(self.n, {(1,) + (0,) * (self.n - 1): 1.0})
        if val == "poly" and lex.peek()[1] == "{":
            return self._poly_dict()
        if val in ("dilate", "translate"):
            lex.expect("(")
            inner = fn._lift(self.sum(), self.n)
            args = []
            while lex.accept(","):
                args.append(lex.real())
            lex.expect(")")
            if val == "dilate":
                if len(args) != 1:
                    raise ParseError("dilate takes one factor", pos, lex.text)
                return fn.dilate(inner, args[0])
            if len(args) != self.n:
                raise ParseError(f"translate needs {self.n} shift component(s)", pos, lex.text)
            return fn.translate(inner, args)
        args = self._args()
        try:
            if val in _FAMILIES:
                (a,) = args or [1.0]
                return _FAMILIES[val](_real(a), self.n)
            if val == "cexp":
                return fn.cexp([_real(a) for a in args], self.n)
            if val == "const":
                (a,) = args
                return fn.const(a, self.n)
            if val == "poly":
                return fn.poly(*args, n=self.n)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad arguments for {val}: {exc}", pos, lex.text) from None
        raise ParseError(f"unknown function family {val!r}", pos, lex.text)

    def _args(self) -> list:
        lex = self.lex
        if not lex.accept("("):
            return []
        args = [lex.number()]
        while lex.accept(","):
            args.append(lex.number())
        lex.expect(")")
        return args

    def _poly_dict(self):
        lex = self.lex
        start = lex.peek()[2]
        depth, j = 0, start
        while j < len(lex.text):
            depth += {"{": 1, "}": -1}.get(lex.text[j], 0)
            j += 1
            if depth == 0:
                break
        try:
            coeffs = ast.literal_eval(lex.text[start:j])
        except (ValueError, SyntaxError):
            raise ParseError("malformed polynomial dictionary", start, lex.text) from None
        while lex.peek()[2] < j and lex.peek()[0] != "end":
            lex.next()
        return fn.Polynomial.from_dict(self.n, {tuple(k): v for k, v in coeffs.items()})


def _real(v) -> float:
    if isinstance(v, complex):
        if v.imag:
            raise ValueError("expected a real parameter")
        return v.real
    return float(v)


def parse_function(text: str, dimension: int = 1) -> SymbolicFunction:
    lex = _Lexer(text)
    out = fn._lift(_FunctionParser(lex, dimension).sum(), dimension)
    lex.done()
    return out


# ---------------------------------------------------------------------------
# Distributions

def parse_distribution(text: str, dimension: int = 1) -> dist.DistributionRep:
    lex = _Lexer(text)
    fparser = _FunctionParser(lex, dimension)
    terms = []
    sign = 1
    while True:
        coef: complex = sign
        if lex.peek()[0] in ("num", "cnum") or (lex.peek()[1] == "-" and lex.peek(1)[0] in ("num", "cnum")):
            coef *= lex.number()
            lex.expect("*")
        alpha = (0,) * dimension
        if lex.peek()[1] == "d" and lex.peek(1)[1] == "[":
            lex.next()
            pos = lex.peek()[2]
            alpha = lex.index()
            if len(alpha) != dimension:
                raise ParseError(f"multi-index has {len(alpha)} entries, dimension is {dimension}", pos, text)
        kind, val, pos = lex.next()
        if val == "dirac":
            lex.expect("(")
            loc = [lex.real()]
            while lex.accept(","):
                loc.append(lex.real())
            lex.expect(")")
            if len(loc) != dimension:
                raise ParseError(f"dirac location needs {dimension} coordinate(s)", pos, text)
            terms.extend(dist.dirac(loc, alpha, coef).terms)
        elif val == "fn":
            lex.expect("(")
            f = fn._lift(fparser.sum(), dimension)
            lex.expect(")")
            terms.extend(dist.function_distribution(f, alpha, coef).terms)
        else:
            raise ParseError(f"expected dirac(...) or fn(...), found {val or 'end of input'!r}", pos, text)
        if lex.accept("+"):
            sign = 1
        elif lex.accept("-"):
            sign = -1
        else:
            break
    lex.done()
    return dist.DistributionRep(tuple(terms))


# ---------------------------------------------------------------------------
# Seminorm specs

def parse_seminorm(text: str, dimension: int = 1):
    lex = _Lexer(text)
    kind, name, pos = lex.next()
    if kind != "name" or name not in ("pS", "pLp", "pOM", "pE", "pD"):
        raise ParseError("expected one of pS, pLp, pOM, pE, pD", pos, text)
    lex.expect("(")
    m = lex.integer()
    lex.expect(",")
    try:
        if name == "pS":
            if lex.peek()[1] == "[":
                beta = lex.index()
            else:
                beta = (lex.integer(),) + (0,) * (dimension - 1)
            if len(beta) != dimension:
                raise ParseError(f"beta needs {dimension} entries", pos, text)
            spec = sn.SNorm(m, beta)
        elif name == "pLp":
            spec = sn.DLpNorm(m, lex.real())
        elif name == "pOM":
            spec = sn.OMNorm(m, fn._lift(_FunctionParser(lex, dimension).sum(), dimension))
        elif name == "pE":
            spec = sn.ESeminorm(m, lex.real())
        else:
            spec = sn.DNorm(m, lex.real())
    except ValueError as exc:
        raise ParseError(str(exc), pos, text) from None
    lex.expect(")")
    lex.done()
    return spec
