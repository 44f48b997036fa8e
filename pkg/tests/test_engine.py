import itertools

import pytest
from hypothesis import given, settings, strategies as st

from schwartzcalc.engine import (Atom, Conv, Derivative, Fourier, Mul, audit_ehrenpreis, classify_map,
                                 infer, parse, result_space)
from schwartzcalc.errors import NotAdmissible, NotFourierMapped, ParseError, UnknownSpace
from schwartzcalc.spaces import includes, is_fourier_mapped, modeled_spaces, parse_space
from schwartzcalc.table import Op, Verdict, find_continuity, find_discontinuity

S = parse_space
SPACES = modeled_spaces(1)


def test_parse_examples():
    assert parse("(phi:D) * (f:E)") == Mul(Atom("phi", S("D")), Atom("f", S("E")))
    e = parse("fourier((T:OC') conv (S:S'))")
    assert e == Fourier(Conv(Atom("T", S("OC'")), Atom("S", S("S'"))))
    assert parse("d[2]((a:D_Lp[1.5]))") == Derivative(Atom("a", S("D_Lp[1.5]")), (2,))


@pytest.mark.parametrize("bad", ["(phi:D) * * (f:E)", "(phi:D", "(a:D) conv", "d[1,2]((a:D))", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError) as exc:
        parse(bad)
    assert "position" in str(exc.value)


def test_unknown_space():
    with pytest.raises(UnknownSpace):
        parse("(a:Q) * (b:D)")


def test_left_associative_and_printing():
    e = parse("(a:D) * (b:D) conv (c:D)")
    assert isinstance(e, Conv) and isinstance(e.left, Mul)
    assert parse(str(e)) == e


def _res(text):
    return infer(parse(text))


def test_infer_examples():
    r = _res("(phi:D) * (f:E)")
    assert (r.space, r.verdict.value, r.verdict.ref.label) == (S("D"), Verdict.DISCONTINUOUS, "Prop 1")
    r = _res("(phi:D) conv (psi:D)")
    assert (r.space, r.verdict.value) == (S("D"), Verdict.CONTINUOUS)
    with pytest.raises(NotAdmissible):
        _res("(S:S') conv (T:D')")
    with pytest.raises(NotFourierMapped):
        _res("fourier((a:D))")


def test_remark2_pair():
    r = _res("(g:OM) * (f:S)")
    assert (r.space, r.verdict.value) == (S("S"), Verdict.DISCONTINUOUS)
    r = _res("(f:S) * (g:OM)")
    assert (r.space, r.verdict.value) == (S("S"), Verdict.DISCONTINUOUS)


def test_undecided_pair():
    # S x D multiplication into D: restriction of a discontinuous map, nothing proved
    r = _res("(f:S) * (g:D)")
    assert r.verdict.value is Verdict.HYPOCONTINUOUS_ONLY_KNOWN
    assert r.verdict.ref.label == "hypocontinuity"


def test_fourier_and_derivative_preserve_verdict():
    r = _res("fourier(d[1]((a:OC') conv (b:S')))")
    assert r.space == S("S'") and r.verdict.value is Verdict.DISCONTINUOUS
    r = _res("d[3]((a:E) * (b:E))")
    assert r.space == S("E") and r.verdict.value is Verdict.CONTINUOUS


def test_json_shape():
    d = _res("(a:OM) * (b:OM)").to_dict()
    assert set(d) == {"space", "verdict", "ref", "trace"}
    assert d["verdict"] == "Continuous" and d["ref"] == "Prop 5"


def _admissible(a, b, op):
    try:
        result_space(a, b, op)
        return True
    except NotAdmissible:
        return False


def test_fourier_exchange_law():
    mapped = [s for s in SPACES if is_fourier_mapped(s)]
    checked = 0
    for a, b in itertools.product(mapped, repeat=2):
        inside = (includes(a, S("OC'")) and includes(b, S("S'"))) or (includes(b, S("OC'")) and includes(a, S("S'")))
        if not inside or not _admissible(a, b, Op.CONVOLVE):
            continue
        lhs = infer(Fourier(Conv(Atom("s", a), Atom("t", b)))).space
        rhs = infer(Mul(Fourier(Atom("s", a)), Fourier(Atom("t", b)))).space
        assert lhs == rhs, (a, b)
        checked += 1
    assert checked >= 10


def test_monotone_admissibility():
    for op in Op:
        for a, b in itertools.product(SPACES, repeat=2):
            if not _admissible(a, b, op):
                continue
            for a2, b2 in itertools.product(SPACES, repeat=2):
                if includes(a2, a) and includes(b2, b):
                    assert _admissible(a2, b2, op), (a, b, a2, b2, op)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SPACES), st.sampled_from(SPACES), st.sampled_from(list(Op)))
def test_verdict_soundness(a, b, op):
    try:
        space, _ = result_space(a, b, op)
    except NotAdmissible:
        return
    v = classify_map(a, b, op, space)
    if v.value is Verdict.CONTINUOUS:
        assert find_continuity(a, b, op, space) is not None
    if v.value is Verdict.DISCONTINUOUS:
        fact = find_discontinuity(a, b, op, space)
        assert fact is not None and fact.target == space and {fact.a, fact.b} == {a, b}


def test_classify_examples():
    v = classify_map(S("D"), S("E'"), Op.CONVOLVE, S("E'"))
    assert (v.value, v.ref.label) == (Verdict.CONTINUOUS, "Prop 3")
    v = classify_map(S("D'"), S("D"), Op.CONVOLVE, S("D'"))
    assert (v.value, v.ref.label) == (Verdict.DISCONTINUOUS, "Remark 5 item 9")
    v = classify_map(S("D"), S("D'"), Op.MULTIPLY, S("E'"))
    assert (v.value, v.ref.label) == (Verdict.DISCONTINUOUS, "Remark 5 item 14")


def test_audit(golden):
    rows = audit_ehrenpreis()
    assert [r.item for r in rows if r.verdict.value is Verdict.CONTINUOUS] == [1, 2, 3, 11, 12]
    assert sum(r.verdict.value is Verdict.DISCONTINUOUS for r in rows) == 9
    text = "\n".join(r.text() for r in rows) + f"\n5 of 14 continuous"
    assert text == (golden / "audit.txt").read_text().rstrip("\n")
