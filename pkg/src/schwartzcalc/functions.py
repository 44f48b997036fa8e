"""Closed-form smooth functions with exact derivatives and growth metadata.

A :class:`SymbolicFunction` is a small expression tree over a fixed set of
families (bumps, Gaussians, polynomials, plane waves, the chirp
``exp(i|x|^2)``, constants and polynomial weights) closed under products,
sums, scalar multiples, dilations and translations.  Differentiation is
structural (Leibniz, chain rule, per-family recurrences), so the derivative of
a tree is again a tree and its :class:`GrowthProfile` is recomputed rather than
asserted.  Numerical values come from the equivalent sympy expression,
compiled with :func:`sympy.lambdify`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product as cartesian
from typing import Optional, Sequence

import numpy as np
import sympy as sp

from .errors import MembershipError
from .spaces import Kind, Space, fmt_real

MultiIndex = tuple[int, ...]


def multi_indices(n: int, order: int) -> list[MultiIndex]:
    """All alpha in N_0^n with |alpha| == order."""
    if n == 1:
        return [(order,)]
    out = []
    for first in range(order, -1, -1):
        for rest in multi_indices(n - 1, order - first):
            out.append((first, *rest))
    return out


def multi_indices_upto(n: int, order: int) -> list[MultiIndex]:
    return [a for k in range(order + 1) for a in multi_indices(n, k)]


def sub_indices(alpha: MultiIndex):
    """All beta <= alpha componentwise."""
    return cartesian(*(range(a + 1) for a in alpha))


def multi_binomial(alpha: MultiIndex, beta: MultiIndex) -> int:
    return math.prod(math.comb(a, b) for a, b in zip(alpha, beta))


def _unit(n: int, j: int) -> MultiIndex:
    return tuple(1 if i == j else 0 for i in range(n))


@lru_cache(maxsize=None)
def symbols(n: int) -> tuple[sp.Symbol, ...]:
    return tuple(sp.symbols([f"x{i + 1}" for i in range(n)], real=True))


def _r2(xs):
    return sum(x**2 for x in xs)


# ---------------------------------------------------------------------------
# Growth metadata

class Decay(enum.IntEnum):
    """Ordered from strongest to weakest; describes all derivatives at once."""

    COMPACT_SUPPORT = 0
    RAPID_DECAY = 1
    TENDS_TO_ZERO = 2
    BOUNDED = 3
    POLYNOMIAL_GROWTH = 4


@dataclass(frozen=True)
class GrowthProfile:
    """``|d^alpha f(x)| = O(|x|^(base + slope*|alpha|))`` plus a decay class.

    For compactly supported and rapidly decreasing functions the exponents are
    irrelevant and kept at zero.
    """

    decay: Decay
    base: float = 0.0
    slope: float = 0.0

    @classmethod
    def from_exponents(cls, base: float, slope: float) -> "GrowthProfile":
        if slope <= 0 and base < 0:
            decay = Decay.TENDS_TO_ZERO
        elif slope <= 0 and base <= 0:
            decay = Decay.BOUNDED
        else:
            decay = Decay.POLYNOMIAL_GROWTH
        return cls(decay, base, slope)

    @property
    def decays_fast(self) -> bool:
        return self.decay <= Decay.RAPID_DECAY

    @property
    def uniform(self) -> bool:
        """One polynomial exponent bounds every derivative (the O_C quantifier order)."""
        return self.decays_fast or self.slope <= 0

    def exponent(self, order: int) -> float:
        if self.decays_fast:
            return -math.inf
        return self.base + self.slope * order

    @property
    def oc_exponent(self) -> Optional[int]:
        """Least k with (1+|x|^2)^-k d^alpha f in C_0 for all alpha, if one exists."""
        if not self.uniform:
            return None
        if self.decays_fast:
            return 0
        top = self.base
        k = max(0, math.floor(top / 2) + 1)
        if top < 0:
            k = 0
        return k

    def om_exponent(self, order: int) -> int:
        """Least k with (1+|x|^2)^-k d^alpha f in C_0 for |alpha| = order."""
        if self.decays_fast:
            return 0
        top = self.exponent(order)
        return 0 if top < 0 else math.floor(top / 2) + 1

    @property
    def kind(self) -> str:
        return "Uniform" if self.uniform else "OrderDependent"

    def times(self, other: "GrowthProfile") -> "GrowthProfile":
        if self.decay is Decay.COMPACT_SUPPORT or other.decay is Decay.COMPACT_SUPPORT:
            return GrowthProfile(Decay.COMPACT_SUPPORT)
        if self.decays_fast or other.decays_fast:
            return GrowthProfile(Decay.RAPID_DECAY)
        return GrowthProfile.from_exponents(self.base + other.base, max(self.slope, other.slope))

    def plus(self, other: "GrowthProfile") -> "GrowthProfile":
        if self.decays_fast and other.decays_fast:
            return GrowthProfile(max(self.decay, other.decay))
        if self.decays_fast:
            return other
        if other.decays_fast:
            return self
        return GrowthProfile.from_exponents(max(self.base, other.base), max(self.slope, other.slope))

    def differentiated(self, order: int) -> "GrowthProfile":
        if self.decays_fast:
            return self
        return GrowthProfile.from_exponents(self.base + self.slope * order, self.slope)


COMPACT = GrowthProfile(Decay.COMPACT_SUPPORT)
RAPID = GrowthProfile(Decay.RAPID_DECAY)


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float

    @property
    def outer_radius(self) -> float:
        """Radius of the smallest origin-centred ball containing this one."""
        return math.hypot(*self.center) + self.radius

    def contains_point(self, x) -> bool:
        return math.dist(self.center, x) <= self.radius


# ---------------------------------------------------------------------------
# The expression tree

@dataclass(frozen=True)
class SymbolicFunction:
    """Base node.  Subclasses are immutable and hashable."""

    dimension: int

    # -- interface every node provides
    @property
    def profile(self) -> GrowthProfile:
        raise NotImplementedError

    @property
    def support(self) -> Optional[Ball]:
        return None

    def _expr(self, xs) -> sp.Expr:
        raise NotImplementedError

    def _derivative(self, alpha: MultiIndex) -> "SymbolicFunction":
        raise NotImplementedError

    def literal(self) -> str:
        raise NotImplementedError

    # -- derived behaviour
    def expr(self) -> sp.Expr:
        return _cached_expr(self)

    def derivative(self, alpha: Sequence[int] | int) -> "SymbolicFunction":
        return derivative(self, alpha)

    def evaluate(self, x) -> complex:
        return evaluate(self, x)

    def __call__(self, *coords):
        return compiled(self)(*coords)

    def __mul__(self, other):
        return product(self, _lift(other, self.dimension))

    def __rmul__(self, other):
        return product(_lift(other, self.dimension), self)

    def __add__(self, other):
        return add(self, _lift(other, self.dimension))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, scale(_lift(other, self.dimension), -1))

    def __str__(self):
        return self.literal()


def _lift(value, n: int) -> SymbolicFunction:
    if isinstance(value, SymbolicFunction):
        if value.dimension != n:
            raise ValueError("functions live over different dimensions")
        return value
    return Constant(n, complex(value))


def _num(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt_real(z.real)
    im = fmt_real(z.imag)
    return f"({fmt_real(z.real)}{im if im.startswith('-') else '+' + im}j)"


@lru_cache(maxsize=4096)
def _cached_expr(f: SymbolicFunction) -> sp.Expr:
    return f._expr(symbols(f.dimension))


@dataclass(frozen=True)
class Constant(SymbolicFunction):
    value: complex = 1.0

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def profile(self):
        return COMPACT if self.is_zero else GrowthProfile.from_exponents(0.0, -1.0)

    @property
    def support(self):
        return Ball((0.0,) * self.dimension, 0.0) if self.is_zero else None

    def _expr(self, xs):
        return _sym_complex(self.value)

    def _derivative(self, alpha):
        return zero(self.dimension)

    def literal(self):
        return f"const({_num(self.value)})"


def zero(n: int) -> Constant:
    return Constant(n, 0.0)


@dataclass(frozen=True)
class Polynomial(SymbolicFunction):
    """Sum of c * x^alpha; ``terms`` is a sorted tuple of (alpha, c)."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, n: int, coeffs: dict) -> SymbolicFunction:
        terms = tuple(sorted((tuple(a), complex(c)) for a, c in coeffs.items() if c != 0))
        if not terms:
            return zero(n)
        if len(terms) == 1 and not any(terms[0][0]):
            return Constant(n, terms[0][1])
        return cls(n, terms)

    @classmethod
    def univariate(cls, n: int, coefficients: Sequence[complex]) -> SymbolicFunction:
        """c0 + c1*x1 + c2*x1^2 + ... (powers of the first coordinate)."""
        coeffs = {}
        for k, c in enumerate(coefficients):
            coeffs[(k,) + (0,) * (n - 1)] = c
        return cls.from_dict(n, coeffs)

    @property
    def degree(self) -> int:
        return max(sum(a) for a, _ in self.terms)

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def profile(self):
        return GrowthProfile.from_exponents(float(self.degree), -1.0)

    def _expr(self, xs):
        return sum((_sym_complex(c) * sp.prod([x**k for x, k in zip(xs, a)]) for a, c in self.terms),
                   sp.Integer(0))

    def _derivative(self, alpha):
        out = {}
        for a, c in self.terms:
            if any(k < d for k, d in zip(a, alpha)):
                continue
            coef = c
            for k, d in zip(a, alpha):
                coef *= math.perm(k, d)
            new = tuple(k - d for k, d in zip(a, alpha))
            out[new] = out.get(new, 0) + coef
        return Polynomial.from_dict(self.dimension, out)

    def literal(self):
        if self.dimension == 1:
            d = self.as_dict()
            return "poly(" + ",".join(_num(d.get((k,), 0)) for k in range(self.degree + 1)) + ")"
        return "poly{" + ", ".join(f"{a}:{_num(c)}" for a, c in self.terms) + "}"


def _sym_real(v) -> sp.Expr:
    v = float(v)
    return sp.Integer(int(v)) if v.is_integer() else sp.Float(v, 17)


def _sym_complex(c) -> sp.Expr:
    c = complex(c)
    re_, im_ = _sym_real(c.real), _sym_real(c.imag)
    return re_ + sp.I * im_ if im_ != 0 else re_


def _poly_times(n: int, p: dict, q: dict) -> dict:
    out = {}
    for a, c in p.items():
        for b, d in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + c * d
    return out


def _poly_derivative(p: dict, j: int) -> dict:
    out = {}
    for a, c in p.items():
        if a[j]:
            key = a[:j] + (a[j] - 1,) + a[j + 1:]
            out[key] = out.get(key, 0) + c * a[j]
    return out


def _poly_plus(p: dict, q: dict) -> dict:
    out = dict(p)
    for a, c in q.items():
        out[a] = out.get(a, 0) + c
    return {a: c for a, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _exp_quadratic_prefactor(n: int, coeff: complex, alpha: MultiIndex) -> tuple:
    """Polynomial P with d^alpha exp(coeff*|x|^2) = P(x) exp(coeff*|x|^2).

    Recurrence: P_{alpha+e_j} = d_j P_alpha + 2*coeff*x_j*P_alpha.
    """
    p = {(0,) * n: 1}
    for j, order in enumerate(alpha):
        for _ in range(order):
            p = _poly_plus(_poly_derivative(p, j), _poly_times(n, p, {_unit(n, j): 2 * coeff}))
    return tuple(sorted(p.items()))


@dataclass(frozen=True)
class Gaussian(SymbolicFunction):
    """exp(-a |x|^2), a > 0."""

    a: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("Gaussian scale must be positive")

    @property
    def profile(self):
        return RAPID

    def _expr(self, xs):
        return sp.exp(-_sym_real(self.a) * _r2(xs))

    def _derivative(self, alpha):
        pre = Polynomial.from_dict(self.dimension, dict(_exp_quadratic_prefactor(self.dimension, -self.a, alpha)))
        return product(pre, self)

    def literal(self):
        return f"gauss({fmt_real(self.a)})"


@dataclass(frozen=True)
class Chirp(SymbolicFunction):
    """exp(i |x|^2)."""

    @property
    def profile(self):
        # |d^alpha exp(i|x|^2)| grows like |x|^|alpha|
        return GrowthProfile.from_exponents(0.0, 1.0)

    def _expr(self, xs):
        return sp.exp(sp.I * _r2(xs))

    def _derivative(self, alpha):
        pre = Polynomial.from_dict(self.dimension, dict(_exp_quadratic_prefactor(self.dimension, 1j, alpha)))
        return product(pre, self)

    def literal(self):
        return "chirp"


@dataclass(frozen=True)
class ComplexExp(SymbolicFunction):
    """exp(i c.x)."""

    frequency: tuple[float, ...] = (1.0,)

    @property
    def profile(self):
        return GrowthProfile.from_exponents(0.0, 0.0)

    def _expr(self, xs):
        return sp.exp(sp.I * sum(_sym_real(c) * x for c, x in zip(self.frequency, xs)))

    def _derivative(self, alpha):
        factor = math.prod((1j * c) ** k for c, k in zip(self.frequency, alpha))
        return scale(self, factor)

    def literal(self):
        if self.dimension == 1:
            return f"cexp({fmt_real(self.frequency[0])})"
        return "cexp(" + ",".join(fmt_real(c) for c in self.frequency) + ")"


@dataclass(frozen=True)
class Weight(SymbolicFunction):
    """(1 + |x|^2)^(-k); used for the polynomially weighted O_C checks."""

    k: float = 1.0

    @property
    def profile(self):
        return GrowthProfile.from_exponents(-2.0 * self.k, -1.0)

    def _expr(self, xs):
        return (1 + _r2(xs)) ** (-_sym_real(self.k))

    def _derivative(self, alpha):
        return Differentiated(self.dimension, self, alpha)

    def literal(self):
        return f"weight({fmt_real(self.k)})"


def _cutoff(t):
    """exp(-1/t) for t > 0, else 0: the standard flat-at-zero smooth step."""
    return sp.Piecewise((sp.exp(-1 / t), t > 0), (0, True))


@dataclass(frozen=True)
class Bump(SymbolicFunction):
    """Compactly supported bump of radius r around the origin.

    ``standard``: exp(-1/(1 - |x|^2/r^2)) on |x| < r.
    ``plateau``: equal to 1 on |x| <= r/2, 0 for |x| >= r, smooth in between.
    """

    radius: float = 1.0
    shape: str = "standard"

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("bump radius must be positive")
        if self.shape not in ("standard", "plateau"):
            raise ValueError(f"unknown bump shape {self.shape!r}")

    @property
    def profile(self):
        return COMPACT

    @property
    def support(self):
        return Ball((0.0,) * self.dimension, float(self.radius))

    def _expr(self, xs):
        r = _sym_real(self.radius)
        s = _r2(xs) / r**2
        if self.shape == "standard":
            return sp.Piecewise((sp.exp(-1 / (1 - s)), s < 1), (0, True))
        outer, inner = _cutoff(1 - s), _cutoff(s - sp.Rational(1, 4))
        return outer / (outer + inner)

    def _derivative(self, alpha):
        return Differentiated(self.dimension, self, alpha)

    def literal(self):
        name = "bump" if self.shape == "standard" else "plateau"
        return f"{name}({fmt_real(self.radius)})"


@dataclass(frozen=True)
class Differentiated(SymbolicFunction):
    """d^alpha of a leaf without a closed family form; sympy differentiates."""

    inner: SymbolicFunction = None
    alpha: MultiIndex = ()

    @property
    def profile(self):
        return self.inner.profile.differentiated(sum(self.alpha))

    @property
    def support(self):
        return self.inner.support

    def _expr(self, xs):
        e = self.inner.expr()
        for x, k in zip(xs, self.alpha):
            if k:
                e = sp.diff(e, x, k)
        return e

    def _derivative(self, alpha):
        return Differentiated(self.dimension, self.inner, tuple(a + b for a, b in zip(self.alpha, alpha)))

    def literal(self):
        return f"d[{','.join(map(str, self.alpha))}]{self.inner.literal()}"


@dataclass(frozen=True)
class Scaled(SymbolicFunction):
    factor: complex = 1.0
    inner: SymbolicFunction = None

    @property
    def profile(self):
        return self.inner.profile

    @property
    def support(self):
        return self.inner.support

    def _expr(self, xs):
        return _sym_complex(self.factor) * self.inner.expr()

    def _derivative(self, alpha):
        return scale(derivative(self.inner, alpha), self.factor)

    def literal(self):
        return f"{_num(self.factor)}*{_wrap(self.inner)}"


@dataclass(frozen=True)
class Product(SymbolicFunction):
    factors: tuple = ()

    @property
    def profile(self):
        prof = self.factors[0].profile
        for f in self.factors[1:]:
            prof = prof.times(f.profile)
        return prof

    @property
    def support(self):
        balls = [f.support for f in self.factors if f.support is not None]
        return min(balls, key=lambda b: b.radius) if balls else None

    def _expr(self, xs):
        return sp.Mul(*(f.expr() for f in self.factors))

    def _derivative(self, alpha):
        # Leibniz rule, peeling off the first factor
        first, rest = self.factors[0], product(*self.factors[1:])
        terms = []
        for beta in sub_indices(alpha):
            gamma = tuple(a - b for a, b in zip(alpha, beta))
            terms.append(scale(product(derivative(first, beta), derivative(rest, gamma)),
                               multi_binomial(alpha, beta)))
        return add(*terms)

    def literal(self):
        return "*".join(_wrap(f) for f in self.factors)


@dataclass(frozen=True)
class Sum(SymbolicFunction):
    terms: tuple = ()

    @property
    def profile(self):
        prof = self.terms[0].profile
        for t in self.terms[1:]:
            prof = prof.plus(t.profile)
        return prof

    @property
    def support(self):
        balls = [t.support for t in self.terms]
        if any(b is None for b in balls):
            return None
        return Ball((0.0,) * self.dimension, max(b.outer_radius for b in balls))

    def _expr(self, xs):
        return sp.Add(*(t.expr() for t in self.terms))

    def _derivative(self, alpha):
        return add(*(derivative(t, alpha) for t in self.terms))

    def literal(self):
        return " + ".join(t.literal() for t in self.terms)


@dataclass(frozen=True)
class Dilated(SymbolicFunction):
    """x -> f(c x), c > 0."""

    inner: SymbolicFunction = None
    c: float = 1.0

    @property
    def profile(self):
        return self.inner.profile

    @property
    def support(self):
        b = self.inner.support
        if b is None:
            return None
        return Ball(tuple(x / self.c for x in b.center), b.radius / self.c)

    def _expr(self, xs):
        c = _sym_real(self.c)
        inner_xs = symbols(self.dimension)
        return self.inner.expr().subs({x: c * y for x, y in zip(inner_xs, xs)}, simultaneous=True)

    def _derivative(self, alpha):
        return scale(dilate(derivative(self.inner, alpha), self.c), self.c ** sum(alpha))

    def literal(self):
        return f"dilate({self.inner.literal()}, {fmt_real(self.c)})"


@dataclass(frozen=True)
class Translated(SymbolicFunction):
    """x -> f(x - x0)."""

    inner: SymbolicFunction = None
    shift: tuple[float, ...] = (0.0,)

    @property
    def profile(self):
        return self.inner.profile

    @property
    def support(self):
        b = self.inner.support
        if b is None:
            return None
        return Ball(tuple(c + s for c, s in zip(b.center, self.shift)), b.radius)

    def _expr(self, xs):
        inner_xs = symbols(self.dimension)
        sub = {x: y - _sym_real(s) for x, y, s in zip(inner_xs, xs, self.shift)}
        return self.inner.expr().subs(sub, simultaneous=True)

    def _derivative(self, alpha):
        return translate(derivative(self.inner, alpha), self.shift)

    def literal(self):
        shift = self.shift[0] if self.dimension == 1 else self.shift
        return f"translate({self.inner.literal()}, {fmt_real(shift)})" if self.dimension == 1 else \
            f"translate({self.inner.literal()}, {','.join(fmt_real(s) for s in shift)})"


def _wrap(f: SymbolicFunction) -> str:
    return f"({f.literal()})" if isinstance(f, Sum) else f.literal()


# ---------------------------------------------------------------------------
# Smart constructors (light normalisation only, no simplification engine)

def is_zero(f: SymbolicFunction) -> bool:
    return isinstance(f, Constant) and f.is_zero


def scale(f: SymbolicFunction, factor) -> SymbolicFunction:
    factor = complex(factor)
    if factor == 0 or is_zero(f):
        return zero(f.dimension)
    if factor == 1:
        return f
    if isinstance(f, Constant):
        return Constant(f.dimension, f.value * factor)
    if isinstance(f, Scaled):
        return scale(f.inner, f.factor * factor)
    return Scaled(f.dimension, factor, f)


def product(*factors: SymbolicFunction) -> SymbolicFunction:
    if not factors:
        raise ValueError("empty product")
    n = factors[0].dimension
    flat, coef = [], 1 + 0j
    for f in factors:
        if f.dimension != n:
            raise ValueError("functions live over different dimensions")
        if isinstance(f, Scaled):
            coef *= f.factor
            f = f.inner
        if isinstance(f, Constant):
            coef *= f.value
            continue
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if coef == 0:
        return zero(n)
    if not flat:
        return Constant(n, coef)
    core = flat[0] if len(flat) == 1 else Product(n, tuple(flat))
    return scale(core, coef)


def add(*terms: SymbolicFunction) -> SymbolicFunction:
    if not terms:
        raise ValueError("empty sum")
    n = terms[0].dimension
    flat = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        elif not is_zero(t):
            flat.append(t)
    if not flat:
        return zero(n)
    if len(flat) == 1:
        return flat[0]
    return Sum(n, tuple(flat))


def _as_index(alpha, n: int) -> MultiIndex:
    if isinstance(alpha, int):
        alpha = (alpha,)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} does not fit dimension {n}")
    return alpha


@lru_cache(maxsize=8192)
def _derivative_cached(f: SymbolicFunction, alpha: MultiIndex) -> SymbolicFunction:
    return f._derivative(alpha)


def derivative(f: SymbolicFunction, alpha) -> SymbolicFunction:
    alpha = _as_index(alpha, f.dimension)
    if not any(alpha):
        return f
    if is_zero(f):
        return f
    return _derivative_cached(f, alpha)


def dilate(f: SymbolicFunction, c: float) -> SymbolicFunction:
    if not c > 0:
        raise ValueError("dilation factor must be positive")
    if c == 1 or isinstance(f, Constant):
        return f
    if isinstance(f, Scaled):
        return scale(dilate(f.inner, c), f.factor)
    if isinstance(f, Dilated):
        return dilate(f.inner, f.c * c)
    return Dilated(f.dimension, f, float(c))


def translate(f: SymbolicFunction, x0) -> SymbolicFunction:
    shift = tuple(float(s) for s in np.atleast_1d(x0))
    if len(shift) != f.dimension:
        raise ValueError("translation vector does not fit the dimension")
    if not any(shift) or isinstance(f, Constant):
        return f
    if isinstance(f, Scaled):
        return scale(translate(f.inner, shift), f.factor)
    if isinstance(f, Translated):
        return translate(f.inner, tuple(a + b for a, b in zip(f.shift, shift)))
    return Translated(f.dimension, f, shift)


# Family constructors used by the CLI grammar and the witnesses.

def bump(r: float = 1.0, n: int = 1) -> Bump:
    return Bump(n, float(r))


def plateau(r: float = 2.0, n: int = 1) -> Bump:
    return Bump(n, float(r), "plateau")


def gauss(a: float = 1.0, n: int = 1) -> Gaussian:
    return Gaussian(n, float(a))


def cexp(c, n: int = 1) -> ComplexExp:
    freq = tuple(float(v) for v in np.atleast_1d(c))
    if len(freq) == 1 and n > 1:
        freq = freq + (0.0,) * (n - 1)
    return ComplexExp(n, freq)


def chirp(n: int = 1) -> Chirp:
    return Chirp(n)


def poly(*coefficients, n: int = 1) -> SymbolicFunction:
    return Polynomial.univariate(n, coefficients)


def const(v=1.0, n: int = 1) -> Constant:
    return Constant(n, complex(v))


def weight(k: float = 1.0, n: int = 1) -> Weight:
    return Weight(n, float(k))


# ---------------------------------------------------------------------------
# Numerics

@lru_cache(maxsize=4096)
def compiled_sympy(f: SymbolicFunction):
    """Whole-tree ``lambdify`` of :meth:`SymbolicFunction.expr` (slow to build, used as an oracle)."""
    xs = symbols(f.dimension)
    raw = sp.lambdify(xs, f.expr(), modules="numpy")

    def g(*coords):
        coords = [np.asarray(c, dtype=float) for c in coords]
        with np.errstate(all="ignore"):
            out = raw(*coords)
        shape = np.broadcast(*coords).shape if coords else ()
        return np.broadcast_to(np.asarray(out, dtype=complex), shape).copy()

    return g


def _numeric(f: SymbolicFunction, xs: list) -> np.ndarray:
    """Structural evaluation; only leaves without a closed family form go through sympy."""
    if isinstance(f, Constant):
        return np.full(np.broadcast(*xs).shape, f.value, dtype=complex)
    if isinstance(f, Polynomial):
        out = 0j
        for a, c in f.terms:
            term = c
            for x, k in zip(xs, a):
                if k:
                    term = term * x**k
            out = out + term
        return out
    if isinstance(f, Gaussian):
        return np.exp(-f.a * sum(x * x for x in xs)).astype(complex)
    if isinstance(f, Chirp):
        return np.exp(1j * sum(x * x for x in xs))
    if isinstance(f, ComplexExp):
        return np.exp(1j * sum(c * x for c, x in zip(f.frequency, xs)))
    if isinstance(f, Scaled):
        return f.factor * _numeric(f.inner, xs)
    if isinstance(f, Product):
        out = _numeric(f.factors[0], xs)
        for g in f.factors[1:]:
            out = out * _numeric(g, xs)
        return out
    if isinstance(f, Sum):
        out = _numeric(f.terms[0], xs)
        for t in f.terms[1:]:
            out = out + _numeric(t, xs)
        return out
    if isinstance(f, Dilated):
        return _numeric(f.inner, [f.c * x for x in xs])
    if isinstance(f, Translated):
        return _numeric(f.inner, [x - s for x, s in zip(xs, f.shift)])
    if isinstance(f, Bump):
        return _bump_numeric(f, xs)
    if isinstance(f, Differentiated) and isinstance(f.inner, Bump):
        # exactly zero off the support and, for the plateau, on the flat core
        s = sum(x * x for x in xs) / f.inner.radius ** 2
        live = s < 1
        if f.inner.shape == "plateau":
            live &= s > 0.25
        out = np.zeros(np.broadcast(*xs).shape, dtype=complex)
        if live.any():
            pts = [np.broadcast_to(x, out.shape)[live] for x in xs]
            out[live] = compiled_sympy(f)(*pts)
        return out
    return compiled_sympy(f)(*xs)


def _bump_numeric(f: Bump, xs: list) -> np.ndarray:
    s = sum(x * x for x in xs) / f.radius ** 2
    s = np.broadcast_to(s, np.broadcast(*xs).shape)

    def cutoff(t):
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = np.exp(-1.0 / t[pos])
        return out

    if f.shape == "standard":
        return cutoff(1.0 - s).astype(complex)
    outer, inner = cutoff(1.0 - s), cutoff(s - 0.25)
    return (outer / (outer + inner)).astype(complex)


@lru_cache(maxsize=4096)
def compiled(f: SymbolicFunction):
    """Vectorised numpy callable ``g(x1, ..., xn) -> complex array``."""

    def g(*coords):
        coords = [np.asarray(c, dtype=float) for c in coords]
        shape = np.broadcast(*coords).shape if coords else ()
        with np.errstate(all="ignore"):
            out = _numeric(f, coords)
        return np.broadcast_to(np.asarray(out, dtype=complex), shape).copy()

    return g


def evaluate(f: SymbolicFunction, x) -> complex:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (f.dimension,):
        raise ValueError(f"point {x} does not have dimension {f.dimension}")
    return complex(compiled(f)(*x))


def evaluate_derivative(f: SymbolicFunction, alpha, x) -> complex:
    return evaluate(derivative(f, alpha), x)


# ---------------------------------------------------------------------------
# Space membership

_FUNCTION_SPACE_KINDS = {Kind.D, Kind.S, Kind.DLP, Kind.BDOT, Kind.DLINF, Kind.OC, Kind.OM, Kind.E}


def membership(f: SymbolicFunction, e: Space) -> tuple[bool, str]:
    """Decide f in e from the growth profile of f."""
    if e.kind not in _FUNCTION_SPACE_KINDS:
        raise MembershipError(f"{e.token} is a distribution space; use the distributions module")
    if e.dimension != f.dimension:
        raise MembershipError("dimension mismatch between function and space")
    prof = f.profile
    d = prof.decay
    n = f.dimension
    if e.kind is Kind.E:
        return True, "every member of the function families is smooth"
    if e.kind is Kind.OM:
        k = prof.om_exponent(0)
        return True, f"each derivative order has its own polynomial bound (order 0: k={k})"
    if e.kind is Kind.OC:
        k = prof.oc_exponent
        if k is None:
            return False, (f"derivative growth exponent {prof.base:g} + {prof.slope:g}|alpha| "
                           "is unbounded in alpha, so no single k works")
        return True, f"one exponent k={k} bounds every derivative"
    if d is Decay.COMPACT_SUPPORT:
        return True, "compact support"
    if e.kind is Kind.D:
        return False, "support is not compact"
    if d is Decay.RAPID_DECAY:
        return True, "all x^beta d^alpha f vanish at infinity"
    if e.kind is Kind.S:
        return False, "not rapidly decreasing"
    worst = prof.base  # slope <= 0 below, so order 0 is the worst exponent
    if prof.slope > 0:
        return False, "derivatives grow without bound"
    if e.kind is Kind.DLINF:
        ok = worst <= 0
        return ok, "all derivatives bounded" if ok else "not bounded"
    if e.kind is Kind.BDOT:
        ok = worst < 0
        return ok, "all derivatives tend to zero" if ok else "derivatives do not tend to zero"
    # D_Lp: |x|^worst is p-integrable at infinity iff worst*p < -n; generic p uses p = 1
    p = 1.0 if e.p is None else e.p
    ok = worst * p < -n
    why = f"|x|^{worst:g} {'is' if ok else 'is not'} in L^{p:g} near infinity"
    return ok, why
