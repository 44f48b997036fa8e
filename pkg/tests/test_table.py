import json

import pytest

from schwartzcalc.spaces import all_spaces, dual, fourier_image, includes, parse_space
from schwartzcalc.table import (Op, PropRef, Verdict, convolutor_space, emit_table, known_continuous_maps,
                                known_discontinuous_maps, multiplier_space, parse_table_json, table_flag)

S = parse_space


def test_golden_json(golden):
    assert emit_table("json").rstrip("\n") == (golden / "table.json").read_text().rstrip("\n")


def test_golden_text(golden):
    assert emit_table("text").rstrip("\n") == (golden / "table.txt").read_text().rstrip("\n")


def test_against_transcription(golden):
    reference = json.loads((golden / "table_transcribed.json").read_text())
    rows = json.loads(emit_table("json"))["entries"]
    assert len(rows) == len(reference) == 14
    for row, ref in zip(rows, reference):
        assert row["space"] == ref["space"]
        assert (row["multiplier"], row["mul_flag"], row["mul_ref"]) == \
            (ref["multiplier"], ref["mul_flag"], f"Prop {ref['mul_prop']}")
        assert (row["convolutor"], row["conv_flag"], row["conv_ref"]) == \
            (ref["convolutor"], ref["conv_flag"], f"Prop {ref['conv_prop']}")


def test_json_round_trip():
    doc = emit_table("json")
    entries = parse_table_json(doc)
    assert json.loads(doc)["entries"] == [e.to_dict() for e in entries]


def test_text_rows():
    lines = emit_table("text").splitlines()
    assert "D | E x(1) | E' x(2)" in lines
    assert "OC' | OC x(6) | OC' o(5)" in lines


def test_spaces_examples():
    assert multiplier_space(S("S")) == S("OM")
    assert multiplier_space(S("D'_Lq")) == S("D_Linf")
    assert multiplier_space(S("E")) == S("E")
    assert multiplier_space(S("D_Linf")) == S("D_Linf")
    assert convolutor_space(S("S")) == S("OC'")
    assert convolutor_space(S("D'")) == S("E'")
    assert convolutor_space(S("OM")) == S("OM'")


def test_flags():
    v = table_flag(S("D"), Op.MULTIPLY)
    assert (v.value, v.ref.label) == (Verdict.DISCONTINUOUS, "Prop 1")
    assert table_flag(S("OM"), Op.MULTIPLY).value is Verdict.CONTINUOUS
    v = table_flag(S("OC'"), Op.CONVOLVE)
    assert (v.value, v.ref.label) == (Verdict.CONTINUOUS, "Prop 5")


def test_flag_totality():
    for e in all_spaces(1):
        for op in Op:
            v = table_flag(e, op)
            assert v.value in (Verdict.CONTINUOUS, Verdict.DISCONTINUOUS)
            assert v.target == e


def test_multipliers_containing_one():
    for tok in ("OC", "OM", "E", "D_Linf"):
        assert includes(multiplier_space(S(tok)), S(tok))
    for tok in ("D", "S", "D_Lp", "Bdot"):
        assert not includes(multiplier_space(S(tok)), S(tok))


@pytest.mark.parametrize("tok", ["OM", "OC", "S", "D", "E"])
def test_multipliers_of_duals(tok):
    assert multiplier_space(dual(S(tok))) == multiplier_space(S(tok))


@pytest.mark.parametrize("tok", ["OM", "OC"])
def test_fourier_transfer(tok):
    e = S(tok)
    assert convolutor_space(fourier_image(e)) == fourier_image(multiplier_space(e))


def _key(f):
    return (f.a, f.b, f.op, f.target)


def test_fact_lists():
    cont = {_key(f) for f in known_continuous_maps()}
    disc = {_key(f) for f in known_discontinuous_maps()}
    assert not cont & disc
    assert (S("D"), S("D"), Op.MULTIPLY, S("D")) in cont
    assert (S("S"), S("S"), Op.CONVOLVE, S("S")) in cont
    assert (S("D"), S("E"), Op.MULTIPLY, S("D")) not in cont
    assert (S("D'"), S("E'"), Op.CONVOLVE, S("D'")) in disc
    assert (S("D"), S("E"), Op.CONVOLVE, S("E")) in disc
    assert (S("E'"), S("D_Linf"), Op.MULTIPLY, S("D'")) in disc


def test_prop2_regularizations_all_listed():
    disc = {(f.a.token, f.b.token, f.op, f.target.token): f.ref.label for f in known_discontinuous_maps()}
    for a, b in [("D", "E'"), ("S", "OC'"), ("D_Lp", "D'_L1"), ("Bdot", "D'_L1"), ("OC", "OC'"),
                 ("OM", "OM'"), ("E", "E'"), ("D_Linf", "D'_L1")]:
        assert disc[(a, b, Op.CONVOLVE, a)] == "Prop 2"


def test_propref_closed():
    with pytest.raises(ValueError):
        PropRef("Prop 99")
