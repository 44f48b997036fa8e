"""The classical test-function and distribution spaces and their inclusion order.

Spaces are identified by a :class:`Kind` plus the ambient dimension ``n`` and,
for the Lebesgue-type kinds, an exponent.  An exponent of ``None`` means
"generic p" (the table's single representative row); numeric exponents are
ordered by the usual rule ``D_Lp(p1) <= D_Lp(p2)`` when ``p1 <= p2``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .errors import DimensionMismatch, NotFourierMapped, UnknownSpace


class Kind(enum.Enum):
    D = "D"
    S = "S"
    DLP = "D_Lp"
    BDOT = "Bdot"
    DLINF = "D_Linf"
    OC = "OC"
    OM = "OM"
    E = "E"
    EPRIME = "E'"
    OMPRIME = "OM'"
    OCPRIME = "OC'"
    DPRIME_L1 = "D'_L1"
    DPRIME_LQ = "D'_Lq"
    SPRIME = "S'"
    DPRIME = "D'"


FUNCTION_KINDS = frozenset(
    {Kind.D, Kind.S, Kind.DLP, Kind.BDOT, Kind.DLINF, Kind.OC, Kind.OM, Kind.E}
)

# Row order of the multiplier-convolutor table (D_Linf is not a row).
TABLE_ORDER = (
    Kind.D, Kind.S, Kind.DLP, Kind.BDOT, Kind.OC, Kind.OM, Kind.E,
    Kind.EPRIME, Kind.OMPRIME, Kind.OCPRIME, Kind.DPRIME_L1, Kind.DPRIME_LQ,
    Kind.SPRIME, Kind.DPRIME,
)

# Generating edges (sub, super) of the inclusion order.  The last two edges
# are not drawn in the two-row diagram but are needed for the least common
# superspace of S and E' and keep duality order-reversing.
KIND_EDGES = (
    (Kind.D, Kind.S), (Kind.S, Kind.DLP), (Kind.DLP, Kind.BDOT),
    (Kind.BDOT, Kind.DLINF), (Kind.DLINF, Kind.OC), (Kind.OC, Kind.OM),
    (Kind.OM, Kind.E),
    (Kind.EPRIME, Kind.OMPRIME), (Kind.OMPRIME, Kind.OCPRIME),
    (Kind.OCPRIME, Kind.DPRIME_L1), (Kind.DPRIME_L1, Kind.DPRIME_LQ),
    (Kind.DPRIME_LQ, Kind.SPRIME), (Kind.SPRIME, Kind.DPRIME),
    (Kind.D, Kind.EPRIME), (Kind.E, Kind.DPRIME),
    (Kind.S, Kind.OMPRIME), (Kind.OM, Kind.SPRIME),
)

_DUAL_KINDS = {
    Kind.D: Kind.DPRIME, Kind.S: Kind.SPRIME, Kind.DLP: Kind.DPRIME_LQ,
    Kind.BDOT: Kind.DPRIME_L1, Kind.OC: Kind.OCPRIME, Kind.OM: Kind.OMPRIME,
    Kind.E: Kind.EPRIME,
}
_DUAL_KINDS.update({v: k for k, v in list(_DUAL_KINDS.items())})

_FOURIER_KINDS = {
    Kind.S: Kind.S, Kind.SPRIME: Kind.SPRIME,
    Kind.OM: Kind.OCPRIME, Kind.OC: Kind.OMPRIME,
    Kind.OCPRIME: Kind.OM, Kind.OMPRIME: Kind.OC,
}


@lru_cache(maxsize=None)
def _kind_closure():
    reach = {k: {k} for k in Kind}
    changed = True
    while changed:
        changed = False
        for sub, sup in KIND_EDGES:
            for k in Kind:
                if sub in reach[k] and not reach[sup] <= reach[k]:
                    reach[k] |= reach[sup]
                    changed = True
    return {k: frozenset(v) for k, v in reach.items()}


def kind_includes(sub: Kind, sup: Kind) -> bool:
    return sup in _kind_closure()[sub]


@dataclass(frozen=True)
class Space:
    kind: Kind
    dimension: int = 1
    p: Optional[float] = None
    q: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dimension!r}")
        if self.p is not None:
            if self.kind is not Kind.DLP:
                raise ValueError("exponent p is only meaningful for D_Lp")
            if not 1 <= self.p < math.inf:
                raise ValueError(f"D_Lp needs 1 <= p < inf, got {self.p}")
            object.__setattr__(self, "p", float(self.p))
        if self.q is not None:
            if self.kind is not Kind.DPRIME_LQ:
                raise ValueError("exponent q is only meaningful for D'_Lq")
            if not 1 < self.q <= math.inf:
                raise ValueError(f"D'_Lq needs 1 < q <= inf, got {self.q}")
            object.__setattr__(self, "q", float(self.q))

    @property
    def is_function_space(self) -> bool:
        return self.kind in FUNCTION_KINDS

    @property
    def is_generic(self) -> bool:
        return self.kind in (Kind.DLP, Kind.DPRIME_LQ) and self.p is None and self.q is None

    @property
    def token(self) -> str:
        if self.kind is Kind.DLP and self.p is not None:
            return f"D_Lp[{_fmt_exponent(self.p)}]"
        if self.kind is Kind.DPRIME_LQ and self.q is not None:
            return f"D'_Lq[{_fmt_exponent(self.q)}]"
        return self.kind.value

    def with_kind(self, kind: Kind) -> "Space":
        return Space(kind, self.dimension)

    def __str__(self):
        return self.token


def fmt_real(x: float) -> str:
    """Short text for a real number that still parses back to the same float."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    short = f"{x:g}"
    return short if float(short) == x else repr(x)


def _fmt_exponent(x: float) -> str:
    return fmt_real(x)


_TOKEN_RE = re.compile(r"^(D_Lp|D'_Lq)\[\s*([0-9.eE+-]+|inf)\s*\]$")
_BY_TOKEN = {k.value: k for k in Kind}
_ALIASES = {"B": Kind.BDOT, "Ḃ": Kind.BDOT, "D_L∞": Kind.DLINF, "D_Linfty": Kind.DLINF}


def parse_space(token: str, dimension: int = 1) -> Space:
    """Inverse of :attr:`Space.token`."""
    token = token.strip()
    m = _TOKEN_RE.match(token)
    if m:
        value = math.inf if m.group(2) == "inf" else float(m.group(2))
        try:
            if m.group(1) == "D_Lp":
                return Space(Kind.DLP, dimension, p=value)
            return Space(Kind.DPRIME_LQ, dimension, q=value)
        except ValueError as exc:
            raise UnknownSpace(str(exc)) from None
    kind = _BY_TOKEN.get(token) or _ALIASES.get(token)
    if kind is None:
        raise UnknownSpace(f"unknown space token {token!r}")
    return Space(kind, dimension)


def space_tokens() -> list[str]:
    return [k.value for k in Kind] + ["D_Lp[p]", "D'_Lq[q]"]


def _check_dims(*spaces: Space):
    dims = {s.dimension for s in spaces}
    if len(dims) > 1:
        raise DimensionMismatch(f"spaces live over different dimensions: {sorted(dims)}")


def includes(sub: Space, sup: Space) -> bool:
    """True iff ``sub`` is continuously included in ``sup``."""
    _check_dims(sub, sup)
    if sub.kind is sup.kind:
        if sub.kind is Kind.DLP:
            return _exponent_le(sub.p, sup.p)
        if sub.kind is Kind.DPRIME_LQ:
            return _exponent_le(sub.q, sup.q)
        return True
    return kind_includes(sub.kind, sup.kind)


def _exponent_le(a, b) -> bool:
    if a is None or b is None:
        return a is b
    return a <= b


def all_spaces(dimension: int = 1) -> list[Space]:
    """The fourteen table spaces in table order (generic exponents)."""
    if not isinstance(dimension, int) or dimension < 1:
        raise ValueError(f"dimension must be a positive integer, got {dimension!r}")
    return [Space(k, dimension) for k in TABLE_ORDER]


def modeled_spaces(dimension: int = 1, extra: Iterable[Space] = ()) -> list[Space]:
    spaces = all_spaces(dimension) + [Space(Kind.DLINF, dimension)]
    for s in extra:
        if s not in spaces:
            spaces.append(s)
    return spaces


def least_common_superspace(a: Space, b: Space) -> Optional[Space]:
    _check_dims(a, b)
    candidates = modeled_spaces(a.dimension, (a, b))
    common = [c for c in candidates if includes(a, c) and includes(b, c)]
    for c in common:
        if all(includes(c, other) for other in common):
            return c
    return None


def dual(e: Space) -> Optional[Space]:
    """Strong dual pairing; ``None`` for D_Linf."""
    if e.kind is Kind.DLINF:
        return None
    kind = _DUAL_KINDS[e.kind]
    if e.kind is Kind.DLP:
        return Space(kind, e.dimension, q=None if e.p is None else conjugate_exponent(e.p))
    if e.kind is Kind.DPRIME_LQ:
        return Space(kind, e.dimension, p=None if e.q is None else conjugate_exponent(e.q))
    return Space(kind, e.dimension)


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1)


def is_fourier_mapped(e: Space) -> bool:
    return e.kind in _FOURIER_KINDS


def fourier_image(e: Space) -> Space:
    try:
        return Space(_FOURIER_KINDS[e.kind], e.dimension)
    except KeyError:
        raise NotFourierMapped(f"no Fourier image is recorded for {e.token}") from None
