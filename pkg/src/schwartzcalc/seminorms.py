"""Seminorm systems of the function spaces, evaluated on symbolic functions.

Derivatives are exact (symbolic); suprema are taken on a uniform grid over
``[-R, R]^n`` and, in one dimension, polished by a bounded scalar maximiser
around the best grid candidates.  Every value returned is attained at some
sampled point, so a computed supremum never exceeds the true one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import integrate, optimize

from . import functions as fn
from .errors import GridError, MembershipError, NonIntegrable
from .functions import (Decay, MultiIndex, SymbolicFunction, multi_indices_upto)
from .spaces import Kind, Space, fmt_real


@dataclass(frozen=True)
class GridSpec:
    radius: float = 6.0
    points: int = 1024
    rule: str = "simpson"
    refine: bool = True

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("grid radius must be positive")
        if self.points < 16:
            raise ValueError("a grid needs at least 16 points per axis")
        if self.rule not in ("trapezoid", "simpson"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")


DEFAULT_GRID = GridSpec()


# ---------------------------------------------------------------------------
# Seminorm specifications

@dataclass(frozen=True)
class DNorm:
    """p_{m,eps} on D with m_nu = m0 + m_step*nu and eps_nu = eps0 * eps_ratio**nu."""

    m0: int = 0
    eps0: float = 1.0
    m_step: int = 1
    eps_ratio: float = 0.5

    def __post_init__(self):
        if self.m0 < 0 or self.m_step < 1:
            raise ValueError("m_nu must be a nondecreasing unbounded sequence of naturals")
        if not self.eps0 > 0 or not 0 < self.eps_ratio < 1:
            raise ValueError("eps_nu must be positive and decrease to 0")

    def m(self, nu: int) -> int:
        return self.m0 + self.m_step * nu

    def eps(self, nu: int) -> float:
        return self.eps0 * self.eps_ratio ** nu

    @property
    def literal(self) -> str:
        return f"pD({self.m0},{fmt_real(self.eps0)})"


@dataclass(frozen=True)
class SNorm:
    """p_{m,beta}(phi) = sup_{x, |alpha|<=m} |x^beta d^alpha phi(x)|."""

    m: int
    beta: MultiIndex

    @property
    def literal(self) -> str:
        beta = self.beta[0] if len(self.beta) == 1 else list(self.beta)
        return f"pS({self.m},{beta})"


@dataclass(frozen=True)
class DLpNorm:
    """p_m(f) = sup_{|alpha|<=m} ||d^alpha f||_p, 1 <= p <= inf."""

    m: int
    p: float = math.inf

    def __post_init__(self):
        if not 1 <= self.p <= math.inf:
            raise ValueError("need 1 <= p <= inf")

    @property
    def literal(self) -> str:
        return f"pLp({self.m},{fmt_real(self.p)})"


@dataclass(frozen=True)
class OMNorm:
    """p_{m,psi}(f) = sup_{|alpha|<=m} ||psi d^alpha f||_inf with psi in S."""

    m: int
    psi: SymbolicFunction

    def __post_init__(self):
        ok, why = fn.membership(self.psi, Space(Kind.S, self.psi.dimension))
        if not ok:
            raise MembershipError(f"O_M weight must lie in S: {why}")

    @property
    def literal(self) -> str:
        return f"pOM({self.m},{self.psi.literal()})"


@dataclass(frozen=True)
class ESeminorm:
    """p_{m,K}(f) = sup_{x in K, |alpha|<=m} |d^alpha f(x)|, K the closed ball of radius K."""

    m: int
    K: float

    def __post_init__(self):
        if self.K < 0:
            raise ValueError("K must be a nonnegative radius")

    @property
    def literal(self) -> str:
        return f"pE({self.m},{fmt_real(self.K)})"


SeminormSpec = Union[DNorm, SNorm, DLpNorm, OMNorm, ESeminorm]


# ---------------------------------------------------------------------------
# Grid machinery

def _check_support(f: SymbolicFunction, grid: GridSpec):
    ball = f.support
    if ball is None:
        return
    for c in ball.center:
        if abs(c) + ball.radius > grid.radius + 1e-12:
            raise GridError(f"support of {f.literal()} is not inside [-{grid.radius:g}, {grid.radius:g}]^n; "
                            "increase the grid radius")


def _axis(grid: GridSpec) -> np.ndarray:
    return np.linspace(-grid.radius, grid.radius, grid.points)


def _mesh(n: int, grid: GridSpec):
    ax = _axis(grid)
    return ax, np.meshgrid(*([ax] * n), indexing="ij")


def _region_mask(norm_x: np.ndarray, inner: Optional[float], outer: Optional[float]) -> np.ndarray:
    mask = np.ones_like(norm_x, dtype=bool)
    if inner is not None:
        mask &= norm_x <= inner + 1e-12
    if outer is not None:
        mask &= norm_x >= outer - 1e-12
    return mask


def sup_abs(f: SymbolicFunction, grid: GridSpec = DEFAULT_GRID, inner: Optional[float] = None,
            outer: Optional[float] = None) -> float:
    """sup |f| over the grid points with inner >= |x| >= outer (either bound optional)."""
    _check_support(f, grid)
    if fn.is_zero(f):
        return 0.0
    g = fn.compiled(f)
    n = f.dimension
    ax, mesh = _mesh(n, grid)
    vals = np.abs(g(*mesh))
    vals = np.where(np.isfinite(vals), vals, 0.0)
    norm_x = np.sqrt(sum(m * m for m in mesh))
    mask = _region_mask(norm_x, inner, outer)
    if not mask.any():
        return 0.0
    vals = np.where(mask, vals, -np.inf)
    best = float(vals.max())
    if grid.refine and n == 1:
        best = max(best, _refine_1d(g, ax, vals, inner, outer))
    return best


def _refine_1d(g, ax: np.ndarray, vals: np.ndarray, inner, outer, candidates: int = 8) -> float:
    """Polish the largest local maxima of the sampled modulus with a bounded maximiser."""
    interior = np.r_[False, (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:]), False]
    interior[0] = vals[0] >= vals[1]
    interior[-1] = vals[-1] >= vals[-2]
    idx = np.flatnonzero(interior & np.isfinite(vals))
    idx = idx[np.argsort(vals[idx])[::-1][:candidates]]
    best = -np.inf

    def allowed(x):
        a = abs(x)
        return (inner is None or a <= inner + 1e-12) and (outer is None or a >= outer - 1e-12)

    # the region boundary belongs to the closed region and can carry the maximum
    for r in (inner, outer):
        if r is not None and r <= ax[-1]:
            for x in (-r, r):
                v = abs(complex(g(x)))
                if math.isfinite(v):
                    best = max(best, v)
    for i in idx:
        lo, hi = ax[max(i - 1, 0)], ax[min(i + 1, len(ax) - 1)]
        if inner is not None:
            lo, hi = max(lo, -inner), min(hi, inner)
        if lo >= hi:
            continue
        res = optimize.minimize_scalar(lambda x: -abs(complex(g(x))), bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-12 * max(1.0, abs(hi))})
        if allowed(res.x) and np.isfinite(res.fun):
            best = max(best, -float(res.fun))
    return best


def _integrate_grid(vals: np.ndarray, ax: np.ndarray, rule: str, n: int) -> float:
    for _ in range(n):
        if rule == "simpson":
            vals = integrate.simpson(vals, x=ax, axis=-1)
        else:
            vals = integrate.trapezoid(vals, x=ax, axis=-1)
    return float(vals)


def lp_norm(f: SymbolicFunction, p: float, grid: GridSpec = DEFAULT_GRID) -> float:
    """||f||_p; p = inf is a grid supremum, finite p a truncated quadrature."""
    if math.isinf(p):
        prof = f.profile
        if prof.decay is Decay.POLYNOMIAL_GROWTH:
            raise MembershipError(f"{f.literal()} is unbounded, so ||.||_inf is infinite")
        return sup_abs(f, grid)
    if not p >= 1:
        raise ValueError("need p >= 1")
    prof = f.profile
    if not prof.decays_fast and not prof.base * p < -f.dimension:
        raise NonIntegrable(f"{f.literal()} is not in L^{p:g}")
    _check_support(f, grid)
    if fn.is_zero(f):
        return 0.0
    ax, mesh = _mesh(f.dimension, grid)
    vals = np.abs(fn.compiled(f)(*mesh)) ** p
    return _integrate_grid(vals, ax, grid.rule, f.dimension) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Evaluation

def _require(f: SymbolicFunction, kind: Kind, p: Optional[float] = None):
    if kind is Kind.DLP and p is not None and math.isinf(p):
        kind, p = Kind.DLINF, None
    space = Space(kind, f.dimension, p=p)
    ok, why = fn.membership(f, space)
    if not ok:
        raise MembershipError(f"{f.literal()} is not in {space.token}: {why}")


def _derivatives(f: SymbolicFunction, m: int):
    return [fn.derivative(f, a) for a in multi_indices_upto(f.dimension, m)]


def _monomial(beta: MultiIndex) -> SymbolicFunction:
    return fn.Polynomial.from_dict(len(beta), {tuple(beta): 1.0})


def eval_seminorm(spec: SeminormSpec, f: SymbolicFunction, grid: GridSpec = DEFAULT_GRID) -> float:
    n = f.dimension
    if isinstance(spec, DNorm):
        _require(f, Kind.D)
        reach = math.ceil(f.support.outer_radius)
        best = 0.0
        for nu in range(reach + 1):
            outer = float(nu) if nu > 0 else None
            inner_sup = max(sup_abs(d, grid, outer=outer) for d in _derivatives(f, spec.m(nu)))
            best = max(best, inner_sup / spec.eps(nu))
        return best
    if isinstance(spec, SNorm):
        if len(spec.beta) != n:
            raise ValueError("multi-index beta does not fit the dimension")
        _require(f, Kind.S)
        mono = _monomial(spec.beta)
        return max(sup_abs(fn.product(mono, d), grid) for d in _derivatives(f, spec.m))
    if isinstance(spec, DLpNorm):
        _require(f, Kind.DLP, spec.p)
        return max(lp_norm(d, spec.p, grid) for d in _derivatives(f, spec.m))
    if isinstance(spec, OMNorm):
        _require(f, Kind.OM)
        if spec.psi.dimension != n:
            raise ValueError("weight and function live over different dimensions")
        return max(sup_abs(fn.product(spec.psi, d), grid) for d in _derivatives(f, spec.m))
    if isinstance(spec, ESeminorm):
        if spec.K > grid.radius:
            raise GridError(f"compact set of radius {spec.K:g} exceeds the grid radius {grid.radius:g}")
        ball = f.support
        if ball is not None and math.hypot(*ball.center) >= spec.K + ball.radius:
            return 0.0  # f and all its derivatives vanish on K
        return max(sup_abs(d, grid, inner=spec.K) for d in _derivatives(f, spec.m))
    raise TypeError(f"not a seminorm spec: {spec!r}")


def _strictly_positive(psi: SymbolicFunction) -> bool:
    if isinstance(psi, (fn.Gaussian, fn.Weight)):
        return True
    if isinstance(psi, fn.Scaled):
        return psi.factor != 0 and _strictly_positive(psi.inner)
    if isinstance(psi, (fn.Dilated, fn.Translated)):
        return _strictly_positive(psi.inner)
    if isinstance(psi, fn.Product):
        return all(_strictly_positive(g) for g in psi.factors)
    return False


def seminorm_is_norm(spec: SeminormSpec) -> bool:
    if isinstance(spec, (DNorm, SNorm, DLpNorm)):
        return True
    if isinstance(spec, OMNorm):
        return _strictly_positive(spec.psi)
    return False
