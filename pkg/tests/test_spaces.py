import itertools
import math

import pytest
from hypothesis import given, strategies as st

from schwartzcalc.errors import DimensionMismatch, NotFourierMapped, UnknownSpace
from schwartzcalc.spaces import (Kind, Space, all_spaces, conjugate_exponent, dual, fourier_image,
                                 includes, is_fourier_mapped, least_common_superspace, modeled_spaces,
                                 parse_space)

K = Kind
S = lambda tok, n=1: parse_space(tok, n)

# The printed chains of the inclusion diagram, written out independently of the module.
TOP = ["D", "S", "D_Lp", "Bdot", "D_Linf", "OC", "OM", "E"]
BOTTOM = ["E'", "OM'", "OC'", "D'_L1", "D'_Lq", "S'", "D'"]
VERTICAL = [("D", "E'"), ("E", "D'")]


def _closure():
    edges = {(a, b) for chain in (TOP, BOTTOM) for a, b in zip(chain, chain[1:])} | set(VERTICAL)
    # extra edges the lattice adopts (see the decisions ledger): S in OM', OM in S'
    edges |= {("S", "OM'"), ("OM", "S'")}
    nodes = TOP + BOTTOM
    reach = {(a, a) for a in nodes} | edges
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(reach), repeat=2):
            if b == c and (a, d) not in reach:
                reach.add((a, d))
                changed = True
    return reach


CLOSURE = _closure()
TOKENS = TOP + BOTTOM


def test_examples():
    assert includes(S("D"), S("E"))
    assert includes(S("E"), S("D'"))
    assert not includes(S("S"), S("E'"))


@pytest.mark.parametrize("a,b", list(itertools.product(TOKENS, repeat=2)))
def test_diagram_fidelity(a, b):
    assert includes(S(a), S(b)) == ((a, b) in CLOSURE)


def test_partial_order_laws_exhaustive():
    spaces = modeled_spaces(1)
    for a in spaces:
        assert includes(a, a)
    for a, b in itertools.product(spaces, repeat=2):
        if includes(a, b) and includes(b, a):
            assert a == b
    for a, b, c in itertools.product(spaces, repeat=3):
        if includes(a, b) and includes(b, c):
            assert includes(a, c)


def test_exponent_rule():
    assert includes(S("D_Lp[1]"), S("D_Lp[2]"))
    assert not includes(S("D_Lp[2]"), S("D_Lp[1]"))
    assert includes(S("D'_Lq[2]"), S("D'_Lq[inf]"))
    assert includes(S("D_Lp[3]"), S("Bdot"))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        includes(Space(K.D, 1), Space(K.E, 2))


def test_least_common_superspace():
    assert least_common_superspace(S("D"), S("D")) == S("D")
    assert least_common_superspace(S("S"), S("E'")) == S("OM'")
    assert least_common_superspace(S("E"), S("D'")) == S("D'")


def test_dual():
    assert dual(S("D")) == S("D'")
    assert dual(dual(S("S"))) == S("S")
    assert dual(S("D_Linf")) is None
    assert dual(S("D_Lp[1]")) == S("D'_Lq[inf]")
    assert dual(S("D_Lp[4]")).q == pytest.approx(4 / 3)


@given(st.floats(min_value=1.01, max_value=50))
def test_conjugate_exponent_involution(p):
    q = conjugate_exponent(p)
    assert 1 / p + 1 / q == pytest.approx(1.0)
    assert conjugate_exponent(q) == pytest.approx(p)


def test_duality_reverses_inclusion():
    spaces = [s for s in all_spaces(1) if dual(s) is not None]
    for a, b in itertools.product(spaces, repeat=2):
        if includes(a, b):
            assert includes(dual(b), dual(a)), (a, b)


def test_fourier_image():
    assert fourier_image(S("OC")) == S("OM'")
    assert fourier_image(S("S")) == S("S")
    with pytest.raises(NotFourierMapped):
        fourier_image(S("D"))
    mapped = [s for s in modeled_spaces(1) if is_fourier_mapped(s)]
    assert sorted(s.token for s in mapped) == sorted(["S", "S'", "OM", "OC", "OM'", "OC'"])
    for s in mapped:
        assert fourier_image(fourier_image(s)) == s


def test_all_spaces():
    sp = all_spaces(1)
    assert len(sp) == 14 and [s.token for s in sp[:4]] == ["D", "S", "D_Lp", "Bdot"]
    assert all(s.dimension == 3 for s in all_spaces(3))
    with pytest.raises(ValueError):
        all_spaces(0)


def test_parse_space_round_trip():
    for s in modeled_spaces(2, [Space(K.DLP, 2, p=1.5), Space(K.DPRIME_LQ, 2, q=math.inf)]):
        assert parse_space(s.token, 2) == s
    with pytest.raises(UnknownSpace):
        parse_space("Q")
    with pytest.raises(UnknownSpace):
        parse_space("D_Lp[0.5]")


def test_space_invariants():
    with pytest.raises(ValueError):
        Space(K.D, 1, p=2)
    with pytest.raises(ValueError):
        Space(K.DPRIME_LQ, 1, q=1)
    with pytest.raises(ValueError):
        Space(K.D, 0)
