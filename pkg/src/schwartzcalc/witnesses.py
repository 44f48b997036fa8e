"""Counterexample families for the discontinuous maps and bound checks for the continuous ones.

A bilinear map ``b: E x F -> G`` is continuous iff for every continuous
seminorm p1 on G there are p2, p3 with ``p1(b(v, w)) <= p2(v) p3(w)``.  Each
witness family fixes the seminorms the corresponding proof fixes, walks a
one-parameter family of pairs (v, w) and records numerator ``p1(b(v, w))`` and
denominator ``p2(v) p3(w)``.  A ratio that keeps growing, or a denominator that
is exactly zero under a positive numerator, is the numerical shadow of the
proof.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from . import distributions as dist
from . import functions as fn
from . import seminorms as sn
from .engine import result_space
from .errors import NoKnownWitness, NotAdmissible, NotSupported
from .functions import SymbolicFunction
from .spaces import Kind, Space
from .table import Op, find_continuity, find_discontinuity

K = Kind
MUL, CONV = Op.MULTIPLY, Op.CONVOLVE


# ---------------------------------------------------------------------------
# Families and reports

@dataclass(frozen=True)
class WitnessFamily:
    id: str
    parameter: str
    a: Space
    b: Space
    op: Op
    target: Space
    ref: str
    transfer: str = "direct"  # direct | embedding | fourier
    variant: str = ""
    description: str = ""

    @property
    def map_text(self) -> str:
        sym = "*" if self.op is MUL else "conv"
        return f"{self.a.token} x {self.b.token} --{sym}--> {self.target.token}"


@dataclass
class WitnessReport:
    family: str
    parameter: str
    params: list
    numerators: list
    denominators: list
    ratios: list
    verdict: str
    map: str = ""
    transfer: str = "direct"
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if not (len(self.params) == len(self.numerators) == len(self.denominators) == len(self.ratios)):
            raise ValueError("report columns differ in length")

    def to_dict(self):
        return {"family": self.family, "parameter": self.parameter, "map": self.map,
                "transfer": self.transfer, "params": self.params, "numerators": self.numerators,
                "denominators": self.denominators, "ratios": self.ratios, "verdict": self.verdict,
                "notes": self.notes}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d) -> "WitnessReport":
        return cls(family=d["family"], parameter=d["parameter"], params=list(d["params"]),
                   numerators=list(d["numerators"]), denominators=list(d["denominators"]),
                   ratios=list(d["ratios"]), verdict=d["verdict"], map=d.get("map", ""),
                   transfer=d.get("transfer", "direct"), notes=list(d.get("notes", [])))


# Native maps: the exact map each proof argues about.
def _native(n: int):
    s = lambda k: Space(k, n)
    return {
        "W_Prop1": (s(K.D), s(K.E), MUL, s(K.D), "Prop 1"),
        "W_Prop2_scaling": (s(K.D), s(K.EPRIME), CONV, s(K.E), "Prop 2"),
        "W_Prop4_chirp": (s(K.OC), s(K.OC), MUL, s(K.OC), "Prop 4"),
        "W_Prop6_oscillation": (s(K.EPRIME), s(K.DLINF), MUL, s(K.DPRIME), "Prop 6"),
        "W_Prop7_shiftedDeltas": (s(K.DPRIME), s(K.EPRIME), CONV, s(K.DPRIME), "Prop 7"),
        "W_Rem3_convDE": (s(K.D), s(K.E), CONV, s(K.E), "Remark 3"),
        "W_Rem5_9": (s(K.DPRIME), s(K.D), CONV, s(K.DPRIME), "Remark 5 item 9"),
        "W_Rem5_14": (s(K.D), s(K.DPRIME), MUL, s(K.EPRIME), "Remark 5 item 14"),
    }


FAMILY_IDS = tuple(_native(1))

_BY_REF = {
    "Prop 1": "W_Prop1", "Prop 2": "W_Prop2_scaling", "Prop 4": "W_Prop4_chirp",
    "Prop 6": "W_Prop6_oscillation", "Prop 7": "W_Prop7_shiftedDeltas",
    "Remark 2": "W_Prop2_scaling", "Remark 3": "W_Rem3_convDE",
    "Remark 5 item 5": "W_Rem3_convDE", "Remark 5 item 10": "W_Rem3_convDE",
    "Remark 5 item 9": "W_Rem5_9", "Remark 5 item 14": "W_Rem5_14",
}

# (family, op of the query) pairs whose proof goes through the Fourier transform.
_FOURIER = {("W_Prop2_scaling", MUL), ("W_Prop4_chirp", CONV), ("W_Prop6_oscillation", CONV)}

_VARIANTS = {"Remark 5 item 5": "item5", "Remark 5 item 10": "item10"}


def family(id: str, n: int = 1) -> WitnessFamily:
    """The family with its native map."""
    try:
        a, b, op, t, ref = _native(n)[id]
    except KeyError:
        raise NoKnownWitness(f"unknown witness family {id!r}") from None
    return WitnessFamily(id, _PARAMETER[id], a, b, op, t, ref, "direct", "", _DESCRIPTION[id])


def witness_for(a: Space, b: Space, op: Op, target: Optional[Space] = None) -> WitnessFamily:
    """The family proving discontinuity of ``a x b -> target`` (natural result if omitted)."""
    if target is None:
        try:
            target = result_space(a, b, op)[0]
        except NotAdmissible as exc:
            raise NoKnownWitness(f"no witness: {exc}") from None
    fact = find_discontinuity(a, b, op, target)
    if fact is None:
        raise NoKnownWitness(f"{a.token} x {b.token} -> {target.token} ({op.value}) is not a known "
                             "discontinuous map, so there is nothing to witness")
    ref = fact.ref.label
    fid = _BY_REF[ref]
    na, nb, nop, nt, _ = _native(a.dimension)[fid]
    variant = _VARIANTS.get(ref, "")
    if (fid, op) in _FOURIER:
        transfer = "fourier"
    elif {a, b} == {na, nb} and op is nop and target == nt:
        transfer = "direct"
    elif variant:
        transfer = "direct"
    else:
        transfer = "embedding"
    return WitnessFamily(fid, _PARAMETER[fid], a, b, op, target, ref, transfer, variant, _DESCRIPTION[fid])


_PARAMETER = {
    "W_Prop1": "rho", "W_Prop2_scaling": "c", "W_Prop4_chirp": "r", "W_Prop6_oscillation": "c",
    "W_Prop7_shiftedDeltas": "rho", "W_Rem3_convDE": "rho", "W_Rem5_9": "rho", "W_Rem5_14": "rho",
}

_DESCRIPTION = {
    "W_Prop1": "f in E vanishing on K={|x|<=rho}, phi in D with phi*f != 0; p_{m,K}(f)=0",
    "W_Prop2_scaling": "f~(x)=f(cx) for the unit bump, T=d^gamma delta with |gamma|=m0+1",
    "W_Prop4_chirp": "f_r = exp(i|x|^2) phi(x/r): Cauchy display shrinks while derivative growth escapes O_C",
    "W_Prop6_oscillation": "f=exp(icx), T=d^{m+1} delta, pairing with a plateau phi",
    "W_Prop7_shiftedDeltas": "T=delta_{x1}, S=delta_{-x1} with x1 outside the supports of B",
    "W_Rem3_convDE": "f in E vanishing on K, phi in D placing f*phi on the target compact set",
    "W_Rem5_9": "T=delta_{x0} outside the supports of B, phi shifted back onto phi0",
    "W_Rem5_14": "T=delta_{x0} outside the supports of B, seminorm |<1, .>| on E'",
}


# ---------------------------------------------------------------------------
# Shared fixed data

def _B_gauss(n: int = 1) -> dist.BoundedSetSpec:
    """Bounded subset of E used for p_B on E'.  The shifted member keeps p_B(d^k delta) > 0 for odd k."""
    g = fn.gauss(1.0, n)
    return dist.BoundedSetSpec((g, fn.translate(g, (0.5,) + (0.0,) * (n - 1))), "E")


def _doubling(start: float, steps: int) -> list[float]:
    return [start * 2.0 ** k for k in range(steps)]



# ---------------------------------------------------------------------------
# Individual constructions.  Each returns (numerator, denominator) for one parameter value.

def _prop6(c: float, m: int = 2, **_):
    phi = fn.plateau(2.0)
    T = dist.dirac(0.0, m + 1)
    f = fn.cexp(c)
    num = abs(dist.pair(phi, dist.multiply(f, T)))
    p_m = sn.eval_seminorm(sn.DLpNorm(m, math.inf), f, sn.GridSpec(radius=4.0, points=1024))
    return num, dist.dual_seminorm(T, _B_gauss()) * p_m


def _prop2(c: float, m0: int = 1, eps0: float = 1.0, grid: Optional[sn.GridSpec] = None, **_):
    grid = grid or sn.GridSpec(radius=2.0, points=1024)
    f = fn.bump(1.0)
    ft = fn.dilate(f, c)
    T = dist.dirac(0.0, m0 + 1)
    conv = dist.convolve_pointmass(ft, T)
    num = sn.sup_abs(conv, grid, inner=1.0)
    den = sn.eval_seminorm(sn.DNorm(m0, eps0), ft, grid) * dist.dual_seminorm(T, _B_gauss())
    return num, den


def _f_r(r: float) -> SymbolicFunction:
    return fn.product(fn.chirp(), fn.dilate(fn.plateau(2.0), 1.0 / r))


def cauchy_sup(r: float, s: float, l: int = 1, points: int = 4096) -> float:
    """sup_{|alpha|<=l} || d^alpha((f_r - f_s)(1+|x|^2)^{-l-1}) ||_inf (the proof's display with j=l)."""
    diff = fn.add(_f_r(r), fn.scale(_f_r(s), -1))
    g = fn.product(diff, fn.weight(l + 1))
    grid = sn.GridSpec(radius=2.0 * max(r, s) + 1.0, points=points)
    return max(sn.sup_abs(fn.derivative(g, a), grid) for a in range(l + 1))


def _prop4(r: float, l: int = 1, **_):
    # Growth that no single O_C weight absorbs: |d^{2k+1} f_r| / (1+|x|^2)^k with k = 0,
    # against the Cauchy display for the pair (r, 2r), which tends to 0.
    grid = sn.GridSpec(radius=2.0 * r + 1.0, points=4096)
    num = sn.sup_abs(fn.derivative(_f_r(r), 1), grid)
    return num, cauchy_sup(r, 2 * r, l)


def _prop1(rho: float, m: int = 2, **_):
    x0 = rho + 2.0
    f = fn.translate(fn.bump(1.0), x0)           # in E, vanishes on |x| <= rho
    phi = fn.translate(fn.bump(2.0), x0)         # in D, phi*f != 0
    grid = sn.GridSpec(radius=x0 + 3.0, points=2048)
    num = sn.lp_norm(fn.product(phi, f), math.inf, grid)         # a norm on D
    den = sn.lp_norm(phi, math.inf, grid) * sn.eval_seminorm(sn.ESeminorm(m, rho), f, grid)
    return num, den


def _prop7(rho: float, **_):
    phi0 = fn.bump(1.0)
    B = dist.BoundedSetSpec((fn.bump(rho), fn.translate(fn.bump(rho / 2), rho / 2)), "D")
    x1 = B.common_support_radius + 1.0
    T, S = dist.dirac(x1), dist.dirac(-x1)
    num = abs(dist.pair(phi0, dist.convolve_pointmass(S, T)))
    den = dist.dual_seminorm(S, _B_gauss()) * dist.dual_seminorm(T, B)
    return num, den


def _grid_conv(f: SymbolicFunction, g: SymbolicFunction, xs: np.ndarray, points: int = 4001) -> np.ndarray:
    """|(f*g)(x)| at each x by the trapezoid rule over the support of f."""
    ball = f.support
    ys = np.linspace(ball.center[0] - ball.radius, ball.center[0] + ball.radius, points)
    F, G = fn.compiled(f), fn.compiled(g)
    vals = F(ys)[None, :] * G(xs[:, None] - ys[None, :])
    return np.abs(integrate.trapezoid(vals, ys, axis=1))


def _rem3(rho: float, variant: str = "", m: int = 2, **_):
    x0 = rho + 2.0
    f = fn.translate(fn.bump(1.0), x0)           # f|_K = 0 for K = {|x| <= rho}
    grid = sn.GridSpec(radius=x0 + 2.0, points=2048)
    if variant == "item10":
        # E x E' -> D': <phi0, f * delta_{-x0}> = int phi0(x) f(x + x0) dx
        phi0 = fn.bump(1.0)
        T = dist.dirac(-x0)
        num = abs(dist.pair(phi0, dist.function_distribution(dist.convolve_pointmass(f, T))))
        den = sn.eval_seminorm(sn.ESeminorm(m, rho), f, grid) * dist.dual_seminorm(T, _B_gauss())
        return num, den
    phi = fn.translate(fn.bump(1.0), -x0)        # moves f * phi back onto |x| <= 1
    xs = np.linspace(-1.0, 1.0, 21)
    num = float(_grid_conv(f, phi, xs).max())  # p_{0, K~} with K~ = {|x| <= 1}
    p_phi = sn.lp_norm(phi, math.inf, grid)
    if variant == "item5":
        # f viewed in D'; p_B with B supported in K
        B = dist.BoundedSetSpec((fn.bump(rho),), "D")
        return num, dist.dual_seminorm(dist.function_distribution(f), B) * p_phi
    return num, sn.eval_seminorm(sn.ESeminorm(m, rho), f, grid) * p_phi


def _rem5_9(rho: float, **_):
    phi0 = fn.bump(1.0)
    B = dist.BoundedSetSpec((fn.bump(rho),), "D")
    x0 = rho + 2.0
    T = dist.dirac(x0)
    phi = fn.translate(fn.bump(1.0), -x0)        # phi * delta_{x0} = phi(. - x0) = bump
    grid = sn.GridSpec(radius=x0 + 2.0, points=2048)
    num = abs(dist.pair(phi0, dist.function_distribution(dist.convolve_pointmass(phi, T))))
    return num, dist.dual_seminorm(T, B) * sn.lp_norm(phi, math.inf, grid)


def _rem5_14(rho: float, **_):
    B = dist.BoundedSetSpec((fn.bump(rho),), "D")
    x0 = rho + 2.0
    T = dist.dirac(x0)
    phi = fn.translate(fn.bump(1.0), x0)
    grid = sn.GridSpec(radius=x0 + 2.0, points=2048)
    num = abs(dist.pair(fn.const(1.0), dist.multiply(phi, T)))
    return num, dist.dual_seminorm(T, B) * sn.lp_norm(phi, math.inf, grid)


_RUNNERS: dict[str, Callable] = {
    "W_Prop1": _prop1, "W_Prop2_scaling": _prop2, "W_Prop4_chirp": _prop4,
    "W_Prop6_oscillation": _prop6, "W_Prop7_shiftedDeltas": _prop7, "W_Rem3_convDE": _rem3,
    "W_Rem5_9": _rem5_9, "W_Rem5_14": _rem5_14,
}

_DEFAULT_VALUES = {
    "c": lambda steps: _doubling(2.0, steps),
    "r": lambda steps: _doubling(4.0, steps),
    "rho": lambda steps: _doubling(1.0, steps),
}

# Fractional slack when comparing ratio growth; the laws are exact so only rounding is absorbed.
REL_SLACK = 1e-9


def classify_ratios(params, numerators, denominators, ratios, growth: float = 2.0) -> str:
    """``zero-denominator``, ``diverges`` or ``failed``.

    ``diverges`` needs strictly increasing ratios whose growth between consecutive
    parameters is at least ``growth`` raised to log2 of the parameter step.
    """
    if all(d == 0.0 for d in denominators) and all(n > 0 for n in numerators):
        return "zero-denominator"
    if any(d == 0.0 for d in denominators) or len(ratios) < 2:
        return "failed"
    for p0, p1, r0, r1 in zip(params, params[1:], ratios, ratios[1:]):
        need = growth ** math.log2(p1 / p0)
        if not r1 > r0 or r1 < need * r0 * (1 - REL_SLACK):
            return "failed"
    return "diverges"


def run_witness(w: WitnessFamily, steps: int = 5, values: Optional[Sequence[float]] = None,
                **settings) -> WitnessReport:
    if values is None:
        if steps < 3:
            raise ValueError("a witness run needs at least 3 steps")
        values = _DEFAULT_VALUES[w.parameter](steps)
    values = [float(v) for v in values]
    runner = _RUNNERS[w.id]
    if w.variant:
        settings.setdefault("variant", w.variant)
    nums, dens, ratios = [], [], []
    for v in values:
        num, den = runner(v, **settings)
        nums.append(float(num))
        dens.append(float(den))
        ratios.append(float(num) / float(den) if den != 0 else None)
    verdict = classify_ratios(values, nums, dens, ratios)
    notes = [w.description]
    if w.transfer != "direct":
        native = family(w.id, w.a.dimension)
        notes.append(f"transferred by {w.transfer} from {native.map_text}")
    return WitnessReport(w.id, w.parameter, values, nums, dens, ratios, verdict, w.map_text, w.transfer, notes)


# ---------------------------------------------------------------------------
# Prop 4 evidence

@dataclass
class CauchyReport:
    l: int
    pairs: list
    sups: list
    decreasing: bool
    chirp_in_OC: bool
    chirp_in_OM: bool
    reasons: dict

    def to_dict(self):
        return {"l": self.l, "pairs": self.pairs, "sups": self.sups, "decreasing": self.decreasing,
                "chirp_in_OC": self.chirp_in_OC, "chirp_in_OM": self.chirp_in_OM, "reasons": self.reasons}


def oc_cauchy_check(l: int = 1, r_values: Sequence[float] = (4, 8, 16, 32),
                    s_values: Optional[Sequence[float]] = None) -> CauchyReport:
    if not 0 <= l <= 2:
        raise ValueError("the Cauchy display is only checked for l <= 2")
    if s_values is None:
        s_values = [2 * r for r in r_values]
    if len(s_values) != len(r_values):
        raise ValueError("r_values and s_values differ in length")
    pairs = [[float(r), float(s)] for r, s in zip(r_values, s_values)]
    sups = [cauchy_sup(r, s, l) for r, s in pairs]
    decreasing = all(b < a for a, b in zip(sups, sups[1:]))
    ch = fn.chirp(1)
    in_oc, why_oc = fn.membership(ch, Space(K.OC, 1))
    in_om, why_om = fn.membership(ch, Space(K.OM, 1))
    return CauchyReport(l, pairs, sups, decreasing, in_oc, in_om, {"OC": why_oc, "OM": why_om})


# ---------------------------------------------------------------------------
# Bounds for continuous maps

@dataclass
class BoundReport:
    map: str
    ref: str
    trials: int
    constant: float
    violations: int
    max_ratio: float
    skipped: bool = False
    note: str = ""

    def to_dict(self):
        return {"map": self.map, "ref": self.ref, "trials": self.trials, "constant": self.constant,
                "violations": self.violations, "max_ratio": self.max_ratio, "skipped": self.skipped,
                "note": self.note}


# Both sides are evaluated on the same unrefined grid: every estimate below is a pointwise
# Leibniz/Hölder inequality, so it holds exactly on the sample points and no tolerance
# beyond rounding is needed.
_BOUND_GRID = sn.GridSpec(radius=6.0, points=1025, rule="trapezoid", refine=False)
_BOUND_TOL = 1e-12


def _rpoly(rng, deg: int = 2) -> SymbolicFunction:
    return fn.poly(*rng.uniform(-1, 1, size=rng.integers(1, deg + 2)))


def random_gp(rng) -> SymbolicFunction:
    """Gaussian-polynomial product P(x) exp(-a x^2)."""
    return fn.product(_rpoly(rng), fn.gauss(float(rng.uniform(0.3, 1.5))))


def random_bounded(rng) -> SymbolicFunction:
    """Member of D_Linf: Gaussian-polynomial plus a plane wave."""
    return fn.add(random_gp(rng), fn.scale(fn.cexp(float(rng.uniform(-2, 2))), float(rng.uniform(-1, 1))))


def random_smooth(rng) -> SymbolicFunction:
    """Member of E (and O_M): polynomial times a plane wave or the chirp."""
    osc = fn.chirp() if rng.random() < 0.3 else fn.cexp(float(rng.uniform(-2, 2)))
    return fn.product(_rpoly(rng, 3), osc)


_BUMP_RADII = (0.6, 0.8, 1.0)


def random_test_function(rng) -> SymbolicFunction:
    """Member of D supported in |x| <= 1.4."""
    b = fn.bump(float(rng.choice(_BUMP_RADII)))
    return fn.product(_rpoly(rng), fn.translate(b, float(rng.uniform(-0.4, 0.4))))


def _point_masses(rng, locations, max_order: int, max_terms: int) -> dist.DistributionRep:
    slots = [(y, b) for y in locations for b in range(max_order + 1)]
    k = int(rng.integers(1, max_terms + 1))
    chosen = rng.choice(len(slots), size=k, replace=False)
    return dist.DistributionRep(tuple(
        dist.Term(complex(rng.uniform(-1, 1)), (slots[i][1],), dist.PointMass((float(slots[i][0]),)))
        for i in sorted(chosen)))


def _localized_monomial(y: float, b: int) -> SymbolicFunction:
    """(-1)^b (x-y)^b / b! * chi(x-y) with chi = 1 near 0: picks the coefficient of d^b delta_y."""
    mono = fn.translate(fn.Polynomial.from_dict(1, {(b,): (-1) ** b / math.factorial(b)}), y)
    return fn.product(mono, fn.translate(fn.plateau(1.5), y))


def _p_B2(T: dist.DistributionRep) -> float:
    """sup over B2 = {sum sigma_j g_{y_j,b_j}, sigma_j = +-1}: attained at sigma = sign(t)."""
    g = fn.add(*(fn.scale(_localized_monomial(t.carrier.location[0], t.alpha[0]),
                          1.0 if t.coefficient.real >= 0 else -1.0) for t in T.terms))
    return abs(dist.pair(g, T))


def _B_predual() -> list[SymbolicFunction]:
    return [fn.gauss(0.5), fn.translate(fn.gauss(0.5), 1.0)]


_LOCATIONS = (-4.0, 0.0, 4.0)


def _ratio(lhs, rhs, C):
    bound = C * rhs
    if bound == 0:
        return math.inf if lhs > _BOUND_TOL else 0.0
    return float(lhs / bound)


def _leibniz_trial(kind: str, rng, m: int, p: float):
    f_gen = {"sup": random_bounded, "lp": random_gp, "E": random_smooth, "S": random_gp,
             "OM": random_gp}[kind]
    f, g = f_gen(rng), f_gen(rng)
    fg = fn.product(f, g)
    G = _BOUND_GRID
    if kind == "sup":
        s = sn.DLpNorm(m, math.inf)
        return sn.eval_seminorm(s, fg, G), sn.eval_seminorm(s, f, G) * sn.eval_seminorm(s, g, G)
    if kind == "lp":
        sp_, sinf = sn.DLpNorm(m, p), sn.DLpNorm(m, math.inf)
        return sn.eval_seminorm(sp_, fg, G), sn.eval_seminorm(sp_, f, G) * sn.eval_seminorm(sinf, g, G)
    if kind == "E":
        s = sn.ESeminorm(m, 1.0)
        return sn.eval_seminorm(s, fg, G), sn.eval_seminorm(s, f, G) * sn.eval_seminorm(s, g, G)
    if kind == "S":
        beta = int(rng.integers(0, 3))
        lhs = sn.eval_seminorm(sn.SNorm(m, (beta,)), fg, G)
        return lhs, sn.eval_seminorm(sn.SNorm(m, (beta,)), f, G) * sn.eval_seminorm(sn.SNorm(m, (0,)), g, G)
    # O_M: psi = exp(-x^2) = exp(-x^2/2) exp(-x^2/2)
    psi, half = fn.gauss(1.0), fn.gauss(0.5)
    lhs = sn.eval_seminorm(sn.OMNorm(m, psi), fg, G)
    return lhs, sn.eval_seminorm(sn.OMNorm(m, half), f, G) * sn.eval_seminorm(sn.OMNorm(m, half), g, G)


def _d_trial(rng, m0: int):
    f, g = random_test_function(rng), random_test_function(rng)
    lhs_norm = sn.DNorm(m0, 1.0, 1, 0.5)
    # eps'_nu = sqrt(eps_nu / 2^{m_nu}) absorbs the Leibniz constant
    rhs_norm = sn.DNorm(m0, math.sqrt(2.0 ** -m0), 1, math.sqrt(0.5 / 2.0))
    G = sn.GridSpec(radius=2.0, points=1025, rule="trapezoid", refine=False)
    return (sn.eval_seminorm(lhs_norm, fn.product(f, g), G),
            sn.eval_seminorm(rhs_norm, f, G) * sn.eval_seminorm(rhs_norm, g, G))


def _young_l1_trial(rng, m: int):
    f, g = random_gp(rng), random_gp(rng)
    ax = np.linspace(-6.0, 6.0, 1025)
    h = ax[1] - ax[0]
    gv = fn.compiled(g)(ax)
    l1 = lambda v: float(np.sum(np.abs(v)) * h)  # uniform weights: discrete Young holds exactly
    lhs = max(l1(np.convolve(fn.compiled(fn.derivative(f, a))(ax), gv) * h) for a in range(m + 1))
    rhs = max(l1(fn.compiled(fn.derivative(f, a))(ax)) for a in range(m + 1)) * l1(gv)
    return lhs, rhs


def _pointmass_trial(rng, k: int):
    S = _point_masses(rng, _LOCATIONS, k, 3)
    T = _point_masses(rng, _LOCATIONS, k, 2)
    B = _B_predual()
    lhs = max(abs(dist.pair(phi, dist.convolve_pointmass(S, T))) for phi in B)
    B1 = [fn.scale(fn.translate(fn.derivative(phi, b), -y), (-1) ** b)
          for phi in B for y in _LOCATIONS for b in range(k + 1)]
    p_B1 = max(abs(dist.pair(psi, S)) for psi in B1)
    return lhs, p_B1 * _p_B2(T)


def _d_eprime_trial(rng, k: int):
    # |<g, phi*T>| <= sum_j |t_j| ||g||_inf ||d^{b_j} phi||_1.  The grid step divides the
    # point-mass spacing, so every shifted copy of d^b phi is sampled on the same nodes and
    # the estimate holds exactly for the trapezoid sums.
    phi = random_test_function(rng)
    T = _point_masses(rng, _LOCATIONS, k, 2)
    B = _B_predual()
    xs = np.linspace(-10.0, 10.0, 2001)
    w = np.full(xs.shape, xs[1] - xs[0])
    w[[0, -1]] /= 2
    conv = fn.compiled(dist.convolve_pointmass(phi, T))(xs)
    lhs = max(abs(np.sum(w * fn.compiled(g)(xs) * conv)) for g in B)
    g_sup = max(np.abs(fn.compiled(g)(xs)).max() for g in B)
    l1 = max(np.sum(w * np.abs(fn.compiled(fn.derivative(phi, b))(xs))) for b in range(k + 1))
    return lhs, float(l1 * g_sup) * _p_B2(T)


def _recipe(a: Space, b: Space, op: Op):
    kinds = frozenset((a.kind, b.kind)) if a.kind != b.kind else frozenset((a.kind,))
    if op is MUL:
        if kinds <= {K.DLINF, K.BDOT}:
            return "sup", "Leibniz constant 2^m under the D_Linf norms"
        if K.DLP in kinds and kinds <= {K.DLP, K.DLINF}:
            return "lp", "Leibniz constant 2^m, L^p norm times D_Linf norm"
        if kinds == {K.E}:
            return "E", "Leibniz constant 2^m under p_{m,K}"
        if kinds == {K.S}:
            return "S", "Leibniz constant 2^m under p_{m,beta}"
        if kinds == {K.OM}:
            return "OM", "Leibniz constant 2^m with the Gaussian split psi = psi1 psi2"
        if kinds == {K.D}:
            return "D", "eps'_nu = sqrt(eps_nu / 2^m_nu), constant 1"
    else:
        if kinds == {K.S}:
            return "S", "via Fourier: continuity of S x S -> S convolution equals that of multiplication"
        if kinds == {K.DLP}:
            return "young", "discrete Young inequality, constant 1"
        if kinds <= {K.EPRIME, K.OCPRIME, K.DPRIME_L1, K.DPRIME_LQ}:
            return "pointmass", "point masses; p_B(S*T) <= p_B1(S) p_B2(T), constant 1"
        if kinds == {K.D, K.EPRIME}:
            return "d_eprime", "|<g, phi*T>| <= max_b ||d^b phi||_1 max ||g||_inf p_B2(T), constant 1"
    return None, ""


def check_continuity_bound(a: Space, b: Space, op: Op, target: Space, trials: int = 100,
                           seed: int = 0, order: int = 2) -> BoundReport:
    """Spot-check ``p1(v op w) <= C p2(v) p3(w)`` on seeded random pairs (dimension 1)."""
    fact = find_continuity(a, b, op, target)
    sym = "*" if op is MUL else "conv"
    name = f"{a.token} x {b.token} --{sym}--> {target.token}"
    if fact is None:
        raise NotSupported(f"{name} is not a known continuous map")
    if a.dimension != 1:
        return BoundReport(name, fact.ref.label, 0, math.nan, 0, math.nan, True,
                           "bound checks are implemented for n = 1 only")
    recipe, note = _recipe(a, b, op)
    if recipe is None:
        return BoundReport(name, fact.ref.label, 0, math.nan, 0, math.nan, True,
                           "no explicit seminorm estimate is available for this map; continuity is cited")
    rng = np.random.default_rng(seed)
    p = next((s.p for s in (a, b, target) if s.kind is K.DLP and s.p is not None), 2.0)
    worst, bad = 0.0, 0
    C = 1.0
    for _ in range(trials):
        m = int(rng.integers(0, order + 1))
        if recipe in ("sup", "lp", "E", "S", "OM"):
            lhs, rhs = _leibniz_trial(recipe, rng, m, p)
            C = 2.0 ** order
            c_trial = 2.0 ** m
        elif recipe == "D":
            lhs, rhs = _d_trial(rng, min(m, 1))
            c_trial = 1.0
        elif recipe == "young":
            lhs, rhs = _young_l1_trial(rng, m)
            c_trial = 1.0
        elif recipe == "pointmass":
            lhs, rhs = _pointmass_trial(rng, m)
            c_trial = 1.0
        else:
            lhs, rhs = _d_eprime_trial(rng, m)
            c_trial = 1.0
        r = _ratio(lhs, rhs, c_trial)
        worst = max(worst, r)
        if lhs > c_trial * rhs * (1 + _BOUND_TOL) + _BOUND_TOL:
            bad += 1
    return BoundReport(name, fact.ref.label, trials, C, bad, worst, False, note)


def leibniz_check(trials: int = 100, max_order: int = 4, seed: int = 0):
    """p_m(fg) <= 2^m p_m(f) p_m(g) under the D_Linf norms; returns (violations, worst ratio)."""
    rng = np.random.default_rng(seed)
    bad, worst = 0, 0.0
    for _ in range(trials):
        m = int(rng.integers(0, max_order + 1))
        lhs, rhs = _leibniz_trial("sup", rng, m, math.inf)
        worst = max(worst, _ratio(lhs, rhs, 2.0 ** m))
        bad += lhs > 2.0 ** m * rhs * (1 + _BOUND_TOL) + _BOUND_TOL
    return int(bad), worst


def om_product_check(trials: int = 100, max_order: int = 3, seed: int = 0):
    """p_{k,psi}(fg) <= 2^k p_{k,psi1}(f) p_{k,psi2}(g) with psi = e^{-x^2} split in halves."""
    rng = np.random.default_rng(seed)
    bad, worst = 0, 0.0
    for _ in range(trials):
        k = int(rng.integers(0, max_order + 1))
        lhs, rhs = _leibniz_trial("OM", rng, k, math.inf)
        worst = max(worst, _ratio(lhs, rhs, 2.0 ** k))
        bad += lhs > 2.0 ** k * rhs * (1 + _BOUND_TOL) + _BOUND_TOL
    return int(bad), worst
