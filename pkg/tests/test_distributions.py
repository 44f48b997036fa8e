import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schwartzcalc import distributions as dist
from schwartzcalc import functions as fn
from schwartzcalc.errors import NonIntegrable, NotSupported


def test_pair_point_mass_derivative():
    phi = fn.product(fn.poly(1, 2, -1), fn.gauss(0.5))
    for g in range(4):
        expected = (-1) ** g * fn.evaluate(fn.derivative(phi, g), 0.0)
        assert dist.pair(phi, dist.dirac(0.0, g)) == pytest.approx(expected, abs=1e-14)


def test_pair_vanishing_point():
    phi = fn.bump(1.0)
    assert dist.pair(phi, dist.dirac(1.5)) == 0


def test_pair_function_carrier_gaussian_integral():
    val = dist.pair(fn.gauss(1.0), dist.function_distribution(fn.const(1.0)))
    assert val == pytest.approx(math.sqrt(math.pi), abs=1e-9)


def test_pair_matches_mollified_delta():
    # a narrow normalised Gaussian approximates delta_0; derivatives move onto phi by parts
    phi = fn.product(fn.poly(0.5, 1), fn.gauss(0.8))
    w = 0.01
    moll = fn.scale(fn.gauss(1 / (2 * w**2)), 1 / (w * math.sqrt(2 * math.pi)))
    for g in range(3):
        exact = dist.pair(phi, dist.dirac(0.0, g))
        approx = dist.pair(phi, dist.function_distribution(moll, g), dist.QuadratureSpec(radius=1.0))
        assert abs(exact - approx) < 1e-3


def test_nonintegrable():
    with pytest.raises(NonIntegrable):
        dist.pair(fn.const(1.0), dist.function_distribution(fn.cexp(1.0)))


def test_convolve_pointmass():
    f = fn.product(fn.poly(0, 1), fn.gauss(1.0))
    assert dist.convolve_pointmass(f, dist.dirac(0.0, 2)) == fn.derivative(f, 2)
    shifted = dist.convolve_pointmass(f, dist.dirac(0.7))
    for x in (-1.0, 0.2, 1.3):
        assert fn.evaluate(shifted, x) == pytest.approx(fn.evaluate(f, x - 0.7))
    phi0 = fn.bump(1.0)
    st_ = dist.convolve_pointmass(dist.dirac(-3.0), dist.dirac(3.0))
    assert dist.pair(phi0, st_) == pytest.approx(fn.evaluate(phi0, 0.0))
    with pytest.raises(NotSupported):
        dist.convolve_pointmass(f, dist.function_distribution(fn.gauss(1.0)))


def test_multiply_transposition():
    # <phi, fT> = <f phi, T>
    f = fn.cexp(1.3)
    T = dist.dirac(0.4, 2, 0.5) + dist.dirac(-0.2, 1)
    for phi in (fn.gauss(1.0), fn.product(fn.poly(1, 1), fn.gauss(0.5))):
        assert dist.pair(phi, dist.multiply(f, T)) == pytest.approx(dist.pair(fn.product(f, phi), T))


def test_dual_seminorm_examples():
    B = dist.BoundedSetSpec((fn.bump(1.0), fn.translate(fn.bump(0.5), 0.2)), "D")
    assert dist.dual_seminorm(dist.dirac(3.0), B) == 0
    phi = fn.gauss(2.0)
    assert dist.dual_seminorm(dist.dirac(0.3), dist.BoundedSetSpec((phi,))) == pytest.approx(math.exp(-0.18))
    assert dist.dual_seminorm(dist.dirac(0.0, 2), dist.BoundedSetSpec((fn.gauss(1.0),))) == pytest.approx(2.0)


def test_bounded_set_in_d_needs_compact_support():
    with pytest.raises(ValueError):
        dist.BoundedSetSpec((fn.gauss(1.0),), "D")


coef = st.floats(-3, 3, allow_nan=False)
loc = st.sampled_from([-1.0, -0.5, 0.0, 0.25, 1.0])
order = st.integers(0, 3)
B = dist.BoundedSetSpec((fn.gauss(1.0), fn.translate(fn.gauss(2.0), 0.3), fn.product(fn.poly(0, 1), fn.gauss(1.0))))


@settings(max_examples=60, deadline=None)
@given(coef, loc, order, coef, loc, order, coef)
def test_dual_seminorm_axioms_and_linearity(c1, x1, g1, c2, x2, g2, lam):
    S = dist.dirac(x1, g1, c1)
    T = dist.dirac(x2, g2, c2)
    pS, pT, pST = (dist.dual_seminorm(X, B) for X in (S, T, S + T))
    assert pST <= pS + pT + 1e-12
    assert dist.dual_seminorm(lam * S, B) == pytest.approx(abs(lam) * pS, abs=1e-12)
    phi = B.members[2]
    assert dist.pair(phi, S + T) == pytest.approx(dist.pair(phi, S) + dist.pair(phi, T), abs=1e-12)


def test_literal():
    T = dist.dirac(0.5, 2, -1.5) + dist.function_distribution(fn.gauss(1.0), 1)
    assert T.literal() == "-1.5*d[2]dirac(0.5) + d[1]fn(gauss(1))"


def test_two_dimensional_pairing():
    phi = fn.gauss(1.0, 2)
    T = dist.dirac((0.0, 0.0), (2, 0))
    assert dist.pair(phi, T) == pytest.approx(-2.0)
    val = dist.pair(fn.const(1.0, 2), dist.function_distribution(phi))
    assert val == pytest.approx(math.pi, rel=1e-6)
