import json

import pytest

from adamsbar.cli import main
from adamsbar.parser import ParseError, bind_cell, parse_text

E1_TEXT = """cdga E1 free
gen t deg 1 wt 1
"""

E3_TEXT = """cdga E3 free
gen x deg 1 wt 1
gen y deg 1 wt 1
gen z deg 1 wt 2
d z = 1*x*y
"""

E4_TEXT = """cdga E4 free
gen t deg 1 wt 1
gen u deg 1 wt 1
gen v deg 1 wt 2
d v = 1*t*u
aug u = 0
aug v = 0
"""

E2_TEXT = """cdga E2 table
gen x0 deg 1 wt 1
gen x1 deg 1 wt 1
"""

BROKEN_TEXT = """cdga Broken free
gen x deg 1 wt 1
gen z deg 1 wt 2
d z = 1*x
"""

CELL_TEXT = """cell T2 over E1
elt b deg 0 wt 0
elt c deg 0 wt 1
d c = 1*t b
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_parse_e3_validates(capsys, tmp_path):
    f = write(tmp_path, "e3.cdga", E3_TEXT)
    code, rep = run(capsys, "validate", f)
    assert code == 0
    assert rep["verdict"] == "pass"


def test_parse_rejects_zero_weight():
    with pytest.raises(ParseError):
        parse_text("cdga A free\ngen x deg 1 wt 0\n")


def test_parse_rejects_empty():
    with pytest.raises(ParseError):
        parse_text("   \n# just a comment\n")


def test_parse_rejects_undeclared():
    with pytest.raises(ParseError):
        parse_text("cdga A free\ngen x deg 1 wt 1\nd x = 1*y\n")


def test_validate_broken_exits_1(capsys, tmp_path):
    f = write(tmp_path, "broken.cdga", BROKEN_TEXT)
    code, rep = run(capsys, "validate", f)
    assert code == 1
    assert rep["verdict"] == "fail"
    assert rep["witnesses"]


def test_unknown_command_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_missing_file_exits_2(capsys):
    code = main(["validate", "/nonexistent/x.cdga"])
    assert code == 2


def test_cohomology_table(capsys, tmp_path):
    f = write(tmp_path, "e3.cdga", E3_TEXT)
    code, rep = run(capsys, "cohomology", f, "--deg-max", "2", "--wt-max", "3")
    assert code == 0
    assert rep["tables"]["0,0"] == 1
    assert rep["tables"]["1,1"] == 2
    assert "1,2" not in rep["tables"]  # dz = xy kills that class


def test_bar_h0_e2(capsys, tmp_path):
    f = write(tmp_path, "e2.cdga", E2_TEXT)
    code, rep = run(capsys, "bar-h0", f, "--wt-max", "3")
    assert code == 0
    assert rep["tables"] == {"0": 1, "1": 2, "2": 4, "3": 8}


def test_colie_e2(capsys, tmp_path):
    f = write(tmp_path, "e2.cdga", E2_TEXT)
    code, rep = run(capsys, "colie", f, "--wt-max", "4")
    assert code == 0
    assert rep["tables"] == {"1": 2, "2": 1, "3": 2, "4": 3}


def test_minimal_model_command(capsys, tmp_path):
    b = write(tmp_path, "e1.cdga", E1_TEXT)
    f = write(tmp_path, "e4.cdga", E4_TEXT)
    code, rep = run(capsys, "minimal-model", f, "--base", b, "--n", "2",
                    "--wt-max", "3")
    assert code == 0
    assert rep["verdict"] == "pass"


def test_quillen_command(capsys, tmp_path):
    f = write(tmp_path, "e3.cdga", E3_TEXT)
    code, rep = run(capsys, "quillen", f, "--wt-max", "3")
    assert code == 0


def test_kernel_command(capsys, tmp_path):
    b = write(tmp_path, "e1.cdga", E1_TEXT)
    f = write(tmp_path, "e4.cdga", E4_TEXT)
    code, rep = run(capsys, "kernel", "--base", b, "--total", f,
                    "--wt-max", "4")
    assert code == 0
    assert rep["verdict"] == "pass"
    assert rep["base_dims"] == {str(w): 1 for w in range(5)}
    for w in range(5):
        assert rep["total_dims"][str(w)] == sum(
            rep["base_dims"][str(w1)] * rep["kernel_dims"][str(w - w1)]
            for w1 in range(w + 1)
        )


def test_coaction_command(capsys, tmp_path):
    b = write(tmp_path, "e1.cdga", E1_TEXT)
    f = write(tmp_path, "e4.cdga", E4_TEXT)
    code, rep = run(capsys, "coaction-check", "--base", b, "--total", f,
                    "--wt-max", "3")
    assert code == 0
    assert rep["coaction_split"] == {"v,t,u": "1"}
    assert rep["coaction_split"] == rep["coaction_conn"]


def test_delta_approx_command(capsys, tmp_path):
    f = write(tmp_path, "e2.cdga", E2_TEXT)
    code, rep = run(capsys, "delta-approx", f, "--n", "2", "--wt-max", "2")
    assert code == 0
    assert rep["stable_n"] == 2


def test_pi1_demo_command(capsys, tmp_path):
    code, rep = run(capsys, "pi1-demo", "--punctures", "3", "--wt-max", "4")
    assert code == 0
    assert rep["gamma_dims"] == {"1": 2, "2": 1, "3": 2, "4": 3}
    assert "mock" in rep["note"]


def test_pi1_demo_bad_punctures(capsys):
    code = main(["pi1-demo", "--punctures", "1", "--wt-max", "2"])
    assert code == 2


def test_cell_module_roundtrip(capsys, tmp_path):
    b = write(tmp_path, "e1.cdga", E1_TEXT)
    f = write(tmp_path, "t2.cell", CELL_TEXT)
    code, rep = run(capsys, "validate", f, "--base", b)
    assert code == 0
    code, rep = run(capsys, "cohomology", f, "--base", b, "--deg-max", "2",
                    "--wt-max", "2")
    assert code == 0
    assert rep["tables"]["0,0"] == 1


def test_cell_requires_matching_algebra(capsys, tmp_path):
    b = write(tmp_path, "e3.cdga", E3_TEXT)
    f = write(tmp_path, "t2.cell", CELL_TEXT)
    code = main(["validate", f, "--base", b])
    assert code == 2


def test_output_deterministic(capsys, tmp_path):
    f = write(tmp_path, "e3.cdga", E3_TEXT)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["colie", f, "--wt-max", "3", "--out", str(out1)]) == 0
    assert main(["colie", f, "--wt-max", "3", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_parse_cell_structure():
    kind, spec = parse_text(CELL_TEXT)
    assert kind == "cell"
    assert spec["name"] == "T2" and spec["over"] == "E1"
    kind, A = parse_text(E1_TEXT)
    M = bind_cell(spec, A)
    ok, fails = M.check()
    assert ok, fails
    assert M.differential == {(0, 1): {(("t", 1),): 1}}
