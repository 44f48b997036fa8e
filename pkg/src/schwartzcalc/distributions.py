"""Finite formal distributions: sums of derivatives of point masses and functions.

A :class:`DistributionRep` stands for ``sum_k c_k * d^{alpha_k}(carrier_k)``,
where each carrier is either a point mass ``delta_{x0}`` or a function from
:mod:`schwartzcalc.functions`.  That is exactly the material the
counterexamples are built from; general distribution arithmetic is out of
scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy import integrate

from . import functions as fn
from .errors import NonIntegrable, NotSupported
from .spaces import fmt_real
from .functions import MultiIndex, SymbolicFunction, sub_indices, multi_binomial


@dataclass(frozen=True)
class PointMass:
    location: tuple[float, ...]

    @property
    def dimension(self) -> int:
        return len(self.location)

    def literal(self) -> str:
        loc = self.location
        return f"dirac({','.join(fmt_real(v) for v in loc)})"


@dataclass(frozen=True)
class FunctionCarrier:
    f: SymbolicFunction

    @property
    def dimension(self) -> int:
        return self.f.dimension

    def literal(self) -> str:
        return f"fn({self.f.literal()})"


Carrier = Union[PointMass, FunctionCarrier]


@dataclass(frozen=True)
class Term:
    coefficient: complex
    alpha: MultiIndex
    carrier: Carrier

    def literal(self) -> str:
        body = self.carrier.literal()
        if any(self.alpha):
            body = f"d[{','.join(map(str, self.alpha))}]{body}"
        if self.coefficient != 1:
            body = f"{fn._num(self.coefficient)}*{body}"
        return body


@dataclass(frozen=True)
class DistributionRep:
    terms: tuple[Term, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a distribution needs at least one term")
        dims = {t.carrier.dimension for t in self.terms} | {len(t.alpha) for t in self.terms}
        if len(dims) != 1:
            raise ValueError("inconsistent dimensions in distribution terms")

    @property
    def dimension(self) -> int:
        return len(self.terms[0].alpha)

    @property
    def point_masses_only(self) -> bool:
        return all(isinstance(t.carrier, PointMass) for t in self.terms)

    def __add__(self, other: "DistributionRep") -> "DistributionRep":
        return DistributionRep(self.terms + other.terms)

    def __mul__(self, scalar) -> "DistributionRep":
        return scaled(self, scalar)

    __rmul__ = __mul__

    def literal(self) -> str:
        return " + ".join(t.literal() for t in self.terms)

    def __str__(self):
        return self.literal()


def _index(alpha, n: int) -> MultiIndex:
    if alpha is None:
        return (0,) * n
    if isinstance(alpha, int):
        alpha = (alpha,) + (0,) * (n - 1)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n:
        raise ValueError(f"multi-index {alpha} does not fit dimension {n}")
    return alpha


def dirac(x0=0.0, alpha=None, coefficient: complex = 1.0) -> DistributionRep:
    """``coefficient * d^alpha delta_{x0}``."""
    loc = tuple(float(v) for v in np.atleast_1d(x0))
    return DistributionRep((Term(complex(coefficient), _index(alpha, len(loc)), PointMass(loc)),))


def function_distribution(f: SymbolicFunction, alpha=None, coefficient: complex = 1.0) -> DistributionRep:
    return DistributionRep((Term(complex(coefficient), _index(alpha, f.dimension), FunctionCarrier(f)),))


def scaled(T: DistributionRep, scalar) -> DistributionRep:
    s = complex(scalar)
    return DistributionRep(tuple(Term(t.coefficient * s, t.alpha, t.carrier) for t in T.terms))


def differentiate(T: DistributionRep, alpha) -> DistributionRep:
    alpha = _index(alpha, T.dimension)
    return DistributionRep(tuple(
        Term(t.coefficient, tuple(a + b for a, b in zip(t.alpha, alpha)), t.carrier) for t in T.terms))


# ---------------------------------------------------------------------------
# Quadrature settings for function carriers

@dataclass(frozen=True)
class QuadratureSpec:
    """Truncation radius for non-compact integrands and absolute/relative tolerances."""

    radius: float = 12.0
    epsabs: float = 1e-12
    epsrel: float = 1e-10
    points: int = 401  # per axis, only used for dimension >= 2


DEFAULT_QUADRATURE = QuadratureSpec()


def _integration_box(f: SymbolicFunction, quad: QuadratureSpec):
    ball = f.support
    n = f.dimension
    if ball is not None:
        return [(c - ball.radius, c + ball.radius) for c in ball.center]
    return [(-quad.radius, quad.radius)] * n


def integrate_function(f: SymbolicFunction, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """Integral of an absolutely integrable family member over R^n."""
    if not f.profile.decays_fast:
        raise NonIntegrable(f"{f.literal()} is not absolutely integrable (decay class {f.profile.decay.name})")
    box = _integration_box(f, quad)
    g = fn.compiled(f)
    if f.dimension == 1:
        (lo, hi), = box
        re_, _ = integrate.quad(lambda x: g(x).real, lo, hi, epsabs=quad.epsabs, epsrel=quad.epsrel, limit=400)
        im_, _ = integrate.quad(lambda x: g(x).imag, lo, hi, epsabs=quad.epsabs, epsrel=quad.epsrel, limit=400)
        return complex(re_, im_)
    axes = [np.linspace(lo, hi, quad.points) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    vals = g(*mesh)
    for ax in reversed(axes):
        vals = integrate.simpson(vals, x=ax, axis=-1)
    return complex(vals)


# ---------------------------------------------------------------------------
# Pairing and the operations the proofs use

def pair(phi: SymbolicFunction, T: DistributionRep, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """<phi, T> = sum c (-1)^|alpha| <d^alpha phi, carrier>."""
    if phi.dimension != T.dimension:
        raise ValueError("dimension mismatch between test function and distribution")
    total = 0j
    for t in T.terms:
        sign = (-1) ** sum(t.alpha)
        dphi = fn.derivative(phi, t.alpha)
        if isinstance(t.carrier, PointMass):
            value = fn.evaluate(dphi, t.carrier.location)
        else:
            value = integrate_function(fn.product(dphi, t.carrier.f), quad)
        total += t.coefficient * sign * value
    return total


def convolve_pointmass(f, T: DistributionRep):
    """f * T for T made of point masses.

    ``f`` may be a function (result: function, ``sum c d^alpha f(. - x0)``) or a
    point-mass distribution (result: ``sum c c' d^{alpha+beta} delta_{x0+y0}``).
    """
    if not T.point_masses_only:
        raise NotSupported("convolution is only implemented against point masses")
    if isinstance(f, DistributionRep):
        if not f.point_masses_only:
            raise NotSupported("convolution of two distributions needs point masses on both sides")
        terms = []
        for s in f.terms:
            for t in T.terms:
                loc = tuple(a + b for a, b in zip(s.carrier.location, t.carrier.location))
                alpha = tuple(a + b for a, b in zip(s.alpha, t.alpha))
                terms.append(Term(s.coefficient * t.coefficient, alpha, PointMass(loc)))
        return DistributionRep(tuple(terms))
    parts = [fn.scale(fn.translate(fn.derivative(f, t.alpha), t.carrier.location), t.coefficient)
             for t in T.terms]
    return fn.add(*parts)


def multiply(f: SymbolicFunction, T: DistributionRep) -> DistributionRep:
    """f T, defined by <phi, f T> = <f phi, T>.

    Uses f d^alpha S = sum_{beta<=alpha} C(alpha,beta) (-1)^|beta| d^{alpha-beta}((d^beta f) S).
    """
    terms = []
    for t in T.terms:
        for beta in sub_indices(t.alpha):
            rest = tuple(a - b for a, b in zip(t.alpha, beta))
            coef = t.coefficient * multi_binomial(t.alpha, beta) * (-1) ** sum(beta)
            df = fn.derivative(f, beta)
            if isinstance(t.carrier, PointMass):
                value = fn.evaluate(df, t.carrier.location)
                if value != 0:
                    terms.append(Term(coef * value, rest, t.carrier))
            else:
                prod = fn.product(df, t.carrier.f)
                if not fn.is_zero(prod):
                    terms.append(Term(coef, rest, FunctionCarrier(prod)))
    if not terms:
        loc = (0.0,) * T.dimension
        return DistributionRep((Term(0j, (0,) * T.dimension, PointMass(loc)),))
    return DistributionRep(tuple(terms))


@dataclass(frozen=True)
class BoundedSetSpec:
    """A finite stand-in for a bounded subset of a test-function space."""

    members: tuple[SymbolicFunction, ...]
    ambient: str = "E"

    def __post_init__(self):
        if not self.members:
            raise ValueError("a bounded set needs at least one member")
        if self.ambient == "D":
            if any(m.support is None for m in self.members):
                raise ValueError("members of a bounded subset of D need compact support")

    @property
    def common_support_radius(self) -> Optional[float]:
        """Radius of an origin-centred ball holding every support (D only)."""
        balls = [m.support for m in self.members]
        if any(b is None for b in balls):
            return None
        return max(b.outer_radius for b in balls)


def dual_seminorm(T: DistributionRep, B: BoundedSetSpec, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """p_B(T) = max over the members g of |<g, T>|."""
    return max(abs(pair(g, T, quad)) for g in B.members)
