"""Multiplier and convolutor spaces with their joint-continuity flags.

All facts are stored as data.  A fact ``(a, b, op, target, ref)`` states that
the bilinear map ``a x b -> target`` given by ``op`` is (dis)continuous, with
``ref`` naming the result that proves it.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import NamedTuple

from .errors import UnknownSpace
from .spaces import Kind, Space, TABLE_ORDER, includes, parse_space


class Op(enum.Enum):
    MULTIPLY = "mul"
    CONVOLVE = "conv"

    @classmethod
    def parse(cls, text: str) -> "Op":
        text = text.strip().lower()
        if text in ("mul", "multiply", "*", "."):
            return cls.MULTIPLY
        if text in ("conv", "convolve", "convolution"):
            return cls.CONVOLVE
        raise ValueError(f"unknown operation {text!r} (expected mul or conv)")


class Verdict(enum.Enum):
    CONTINUOUS = "Continuous"
    DISCONTINUOUS = "Discontinuous"
    HYPOCONTINUOUS_ONLY_KNOWN = "HypocontinuousOnlyKnown"


PROP_REFS = (
    "Prop 1", "Prop 2", "Prop 3", "Prop 3 argument", "Prop 4", "Prop 5",
    "Prop 6", "Prop 7", "Remark 2", "Remark 3",
    *(f"Remark 5 item {i}" for i in range(1, 15)),
    "hypocontinuity",
    "identity",
)
HYPO_REF_LABEL = "hypocontinuity"


@dataclass(frozen=True)
class PropRef:
    label: str

    def __post_init__(self):
        if self.label not in PROP_REFS:
            raise ValueError(f"unknown reference label {self.label!r}")

    @property
    def number(self) -> str:
        """Short form used in the text table: ``Prop 5`` -> ``5``."""
        return self.label.split()[-1]

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ContinuityVerdict:
    value: Verdict
    target: Space
    ref: PropRef

    def __post_init__(self):
        if self.value is Verdict.HYPOCONTINUOUS_ONLY_KNOWN and self.ref.label != HYPO_REF_LABEL:
            raise ValueError("undecided verdicts carry the blanket hypocontinuity reference")

    @property
    def flag(self) -> str:
        return {"Continuous": "o", "Discontinuous": "x"}.get(self.value.value, "?")

    def to_dict(self):
        return {"verdict": self.value.value, "target": self.target.token, "ref": self.ref.label}


class MapFact(NamedTuple):
    a: Space
    b: Space
    op: Op
    target: Space
    ref: PropRef

    def describe(self) -> str:
        sym = "*" if self.op is Op.MULTIPLY else "conv"
        return f"{self.a} x {self.b} -{sym}-> {self.target}"


@dataclass(frozen=True)
class TableEntry:
    space: Space
    multiplier: Space
    mul_verdict: ContinuityVerdict
    convolutor: Space
    conv_verdict: ContinuityVerdict

    def to_dict(self):
        return {
            "space": self.space.token,
            "multiplier": self.multiplier.token,
            "mul_flag": self.mul_verdict.flag,
            "mul_ref": self.mul_verdict.ref.label,
            "convolutor": self.convolutor.token,
            "conv_flag": self.conv_verdict.flag,
            "conv_ref": self.conv_verdict.ref.label,
        }

    @classmethod
    def from_dict(cls, d, dimension: int = 1) -> "TableEntry":
        space = parse_space(d["space"], dimension)
        flags = {"o": Verdict.CONTINUOUS, "x": Verdict.DISCONTINUOUS}
        return cls(
            space=space,
            multiplier=parse_space(d["multiplier"], dimension),
            mul_verdict=ContinuityVerdict(flags[d["mul_flag"]], space, PropRef(d["mul_ref"])),
            convolutor=parse_space(d["convolutor"], dimension),
            conv_verdict=ContinuityVerdict(flags[d["conv_flag"]], space, PropRef(d["conv_ref"])),
        )

    def text_row(self) -> str:
        m, c = self.mul_verdict, self.conv_verdict
        return (f"{self.space.token} | {self.multiplier.token} {m.flag}({m.ref.number})"
                f" | {self.convolutor.token} {c.flag}({c.ref.number})")


K = Kind
O, X = Verdict.CONTINUOUS, Verdict.DISCONTINUOUS

# kind: (M(E), flag, ref, C(E), flag, ref)
_ROWS = {
    K.D: (K.E, X, "Prop 1", K.EPRIME, X, "Prop 2"),
    K.S: (K.OM, X, "Prop 2", K.OCPRIME, X, "Prop 2"),
    K.DLP: (K.DLINF, O, "Prop 3", K.DPRIME_L1, X, "Prop 2"),
    K.BDOT: (K.DLINF, O, "Prop 3", K.DPRIME_L1, X, "Prop 2"),
    K.OC: (K.OC, X, "Prop 4", K.OCPRIME, X, "Prop 2"),
    K.OM: (K.OM, O, "Prop 5", K.OMPRIME, X, "Prop 2"),
    K.E: (K.E, O, "Prop 3", K.EPRIME, X, "Prop 2"),
    K.EPRIME: (K.E, X, "Prop 6", K.EPRIME, O, "Prop 3"),
    K.OMPRIME: (K.OM, X, "Prop 6", K.OMPRIME, X, "Prop 4"),
    K.OCPRIME: (K.OC, X, "Prop 6", K.OCPRIME, O, "Prop 5"),
    K.DPRIME_L1: (K.DLINF, X, "Prop 6", K.DPRIME_L1, O, "Prop 3"),
    K.DPRIME_LQ: (K.DLINF, X, "Prop 6", K.DPRIME_L1, O, "Prop 3"),
    K.SPRIME: (K.OM, X, "Prop 6", K.OCPRIME, X, "Prop 6"),
    K.DPRIME: (K.E, X, "Prop 6", K.EPRIME, X, "Prop 7"),
}
# D_Linf shares the multipliers and convolutors of D_Lp; its row flags come
# from Prop 3 (algebra) and the regularization remark after Prop 2.
_DLINF_ROW = (K.DLINF, O, "Prop 3", K.DPRIME_L1, X, "Prop 2")


def _row(e: Space):
    if e.kind is K.DLINF:
        return _DLINF_ROW
    try:
        return _ROWS[e.kind]
    except KeyError:
        raise UnknownSpace(f"{e.token} has no table row") from None


def _same_params(kind: Kind, like: Space) -> Space:
    """Result space of a row, carrying the row's exponent where it makes sense."""
    if kind is like.kind:
        return like
    return Space(kind, like.dimension)


def multiplier_space(e: Space) -> Space:
    return _same_params(_row(e)[0], e)


def convolutor_space(e: Space) -> Space:
    return _same_params(_row(e)[3], e)


def table_flag(e: Space, op: Op) -> ContinuityVerdict:
    row = _row(e)
    value, ref = (row[1], row[2]) if op is Op.MULTIPLY else (row[4], row[5])
    return ContinuityVerdict(value, e, PropRef(ref))


def table_entries(dimension: int = 1) -> list[TableEntry]:
    entries = []
    for kind in TABLE_ORDER:
        e = Space(kind, dimension)
        entries.append(TableEntry(
            space=e,
            multiplier=multiplier_space(e),
            mul_verdict=table_flag(e, Op.MULTIPLY),
            convolutor=convolutor_space(e),
            conv_verdict=table_flag(e, Op.CONVOLVE),
        ))
    return entries


TABLE_FORMAT_VERSION = 1


def emit_table(fmt: str = "text", dimension: int = 1) -> str:
    entries = table_entries(dimension)
    if fmt == "json":
        doc = {"format_version": TABLE_FORMAT_VERSION,
               "entries": [e.to_dict() for e in entries]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        lines = ["E | M(E) | C(E)"]
        lines += [e.text_row() for e in entries]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def parse_table_json(text: str, dimension: int = 1) -> list[TableEntry]:
    doc = json.loads(text)
    return [TableEntry.from_dict(d, dimension) for d in doc["entries"]]


def _fact(a, b, op, target, ref, dimension):
    def sp(x):
        if isinstance(x, tuple):
            kind, value = x
            return Space(kind, dimension, p=value) if kind is K.DLP else Space(kind, dimension, q=value)
        return Space(x, dimension)
    return MapFact(sp(a), sp(b), op, sp(target), PropRef(ref))


MUL, CONV = Op.MULTIPLY, Op.CONVOLVE

_EXTRA_CONTINUOUS = (
    (K.S, K.S, MUL, K.S, "Prop 3 argument"),
    (K.BDOT, K.BDOT, MUL, K.BDOT, "Prop 3 argument"),
    (K.DLP, K.DLP, MUL, K.DLP, "Prop 3 argument"),
    (K.S, K.S, CONV, K.S, "Prop 3 argument"),
    ((K.DLP, 1.0), (K.DLP, 1.0), CONV, (K.DLP, 1.0), "Prop 3 argument"),
    (K.DLINF, K.DLINF, MUL, K.DLINF, "Prop 3"),
    (K.D, K.D, CONV, K.D, "Remark 5 item 1"),
    (K.D, K.EPRIME, CONV, K.EPRIME, "Prop 3"),  # via D in E' continuously
    (K.D, K.D, MUL, K.D, "Remark 5 item 11"),
)

_EXTRA_DISCONTINUOUS = (
    (K.D, K.EPRIME, CONV, K.E, "Prop 2"),
    (K.DLINF, K.DPRIME_L1, CONV, K.DLINF, "Prop 2"),
    (K.EPRIME, K.DLINF, MUL, K.DPRIME, "Prop 6"),
    (K.OM, K.S, MUL, K.S, "Remark 2"),
    (K.D, K.E, CONV, K.E, "Remark 3"),
    (K.D, K.DPRIME, CONV, K.E, "Remark 5 item 5"),
    (K.DPRIME, K.D, CONV, K.DPRIME, "Remark 5 item 9"),
    (K.E, K.EPRIME, CONV, K.DPRIME, "Remark 5 item 10"),
    (K.D, K.DPRIME, MUL, K.EPRIME, "Remark 5 item 14"),
)


def _table_facts(value: Verdict, dimension: int):
    facts = []
    for kind in TABLE_ORDER:
        row = _ROWS[kind]
        if row[1] is value:
            facts.append(_fact(kind, row[0], MUL, kind, row[2], dimension))
        if row[4] is value:
            facts.append(_fact(kind, row[3], CONV, kind, row[5], dimension))
    return facts


def known_continuous_maps(dimension: int = 1) -> list[MapFact]:
    facts = _table_facts(O, dimension)
    facts += [_fact(*row, dimension) for row in _EXTRA_CONTINUOUS]
    return facts


def known_discontinuous_maps(dimension: int = 1) -> list[MapFact]:
    facts = _table_facts(X, dimension)
    facts += [_fact(*row, dimension) for row in _EXTRA_DISCONTINUOUS]
    return facts


# ---------------------------------------------------------------------------
# Fact matching.  Generic exponents in facts range over every admissible value;
# a query is matched against the instances that use the query's own exponents.

def _instantiate(fact: MapFact, p, q) -> MapFact:
    def inst(s: Space) -> Space:
        if s.kind is K.DLP and s.p is None:
            return Space(K.DLP, s.dimension, p=p)
        if s.kind is K.DPRIME_LQ and s.q is None:
            return Space(K.DPRIME_LQ, s.dimension, q=q)
        return s
    return fact._replace(a=inst(fact.a), b=inst(fact.b), target=inst(fact.target))


def _instances(fact: MapFact, spaces):
    ps = {s.p for s in spaces if s.kind is K.DLP} | {None}
    qs = {s.q for s in spaces if s.kind is K.DPRIME_LQ} | {None}
    seen = set()
    for p in ps:
        for q in qs:
            inst = _instantiate(fact, p, q)
            if inst not in seen:
                seen.add(inst)
                yield inst


def find_discontinuity(a: Space, b: Space, op: Op, target: Space):
    """Exact match of the pair, same orientation first; the flipped map is the same map."""
    facts = known_discontinuous_maps(a.dimension)
    for pair in ((a, b), (b, a)):
        for fact in facts:
            for inst in _instances(fact, (a, b, target)):
                if inst.op is op and inst.target == target and (inst.a, inst.b) == pair:
                    return fact
    return None


def find_continuity(a: Space, b: Space, op: Op, target: Space):
    """A continuous fact a0 x b0 -> t0 with a<=a0, b<=b0 (either order) and t0<=target.

    Exact matches win over matches that go through embeddings.
    """
    facts = known_continuous_maps(a.dimension)
    for fact in facts:
        for inst in _instances(fact, (a, b, target)):
            if inst.op is op and inst.target == target and {inst.a, inst.b} == {a, b}:
                return fact
    for fact in facts:
        for inst in _instances(fact, (a, b, target)):
            if inst.op is not op or not includes(inst.target, target):
                continue
            if (includes(a, inst.a) and includes(b, inst.b)) or \
               (includes(b, inst.a) and includes(a, inst.b)):
                return fact
    return None
