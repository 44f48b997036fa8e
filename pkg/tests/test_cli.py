import json
import subprocess
import sys

import pytest

from schwartzcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_json_matches_golden(capsys, golden):
    code, out, _ = run(capsys, "table", "--json")
    assert code == 0
    assert json.loads(out) == json.loads((golden / "table.json").read_text())


def test_table_text_matches_golden(capsys, golden):
    code, out, _ = run(capsys, "table")
    assert out.rstrip("\n") == (golden / "table.txt").read_text().rstrip("\n")


def test_audit_matches_golden(capsys, golden):
    code, out, _ = run(capsys, "audit-ehrenpreis")
    assert code == 0
    assert out.rstrip("\n") == (golden / "audit.txt").read_text().rstrip("\n")
    code, out, _ = run(capsys, "audit-ehrenpreis", "--json")
    doc = json.loads(out)
    assert (doc["continuous"], doc["total"]) == (5, 14)


def test_infer(capsys):
    code, out, _ = run(capsys, "infer", "(f:OC) * (T:S')")
    assert code == 0
    assert out.splitlines()[0] == "space:   S'"
    code, out, _ = run(capsys, "infer", "--json", "fourier((s:OC') conv (t:S'))")
    assert json.loads(out)["space"] == "S'"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "D'", "E", "mul")
    assert code == 0 and out.strip() == "D' x E --mul--> D': Discontinuous (Prop 6)"
    code, out, _ = run(capsys, "classify", "--json", "E'", "E'", "conv")
    doc = json.loads(out)
    assert (doc["verdict"], doc["ref"]) == ("Continuous", "Prop 3")


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "D'", "E", "mul", "--steps", "3")
    assert code == 0 and "verdict: diverges" in out
    code, out, _ = run(capsys, "witness", "--family", "W_Rem5_14", "--json", "--steps", "3")
    doc = json.loads(out)
    assert doc["verdict"] == "zero-denominator" and doc["denominators"] == [0.0, 0.0, 0.0]


def test_seminorm_and_membership(capsys):
    code, out, _ = run(capsys, "seminorm", "pS(0,2)", "gauss(1)")
    assert code == 0 and abs(float(out) - 0.36787944117) < 1e-9
    code, out, _ = run(capsys, "membership", "chirp", "OC")
    assert code == 0 and out.startswith("false")
    code, out, _ = run(capsys, "membership", "--json", "chirp", "OM")
    assert json.loads(out)["member"] is True


def test_bound_and_cauchy(capsys):
    code, out, _ = run(capsys, "bound", "E", "E", "mul", "--trials", "10")
    assert code == 0 and " 0 violations" in out
    code, out, _ = run(capsys, "cauchy", "--json")
    doc = json.loads(out)
    assert doc["decreasing"] and not doc["chirp_in_OC"]


@pytest.mark.parametrize("argv", [
    ["infer", "(a:D) conv"],                       # parse error
    ["infer", "(a:D') * (b:D')"],                  # not admissible
    ["witness", "E", "E", "mul"],                  # no witness for a continuous map
    ["seminorm", "pS(0,0)", "cexp(1)"],            # not a member of S
    ["bound", "D'", "E", "mul"],                   # not a continuous map
    ["classify", "D", "D", "frob"],                # unknown operation
])
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


@pytest.mark.parametrize("argv", [[], ["nope"], ["table", "--format", "xml"], ["witness"], ["table", "-n", "0"]])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_help_exit_0(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "grammars:" in out


def test_deterministic_output(capsys):
    first = run(capsys, "bound", "D", "D", "mul", "--json", "--trials", "5", "--seed", "7")[1]
    second = run(capsys, "bound", "D", "D", "mul", "--json", "--trials", "5", "--seed", "7")[1]
    assert first == second


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schwartzcalc.cli", "classify", "D", "D", "mul"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "Continuous" in proc.stdout
