import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from acblie import FamilySpec, construct_class_family
from acblie.cli import main
from acblie.errors import InputError
from acblie.families import DEFAULT_GRID, FAMILY_IDS, TWO_PARAMETER
from acblie.io import InputDocument, dump_report, emit_document, load_report, parse_document, parse_rational
from oracles import lie_algebras


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("text, value", [("3", 3), ("-2/6", Fraction(-1, 3)), ("+7/2", Fraction(7, 2)), (4, 4)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "a", "1/-2", "", True])
def test_parse_rational_rejects(text):
    with pytest.raises(InputError):
        parse_rational(text)


@settings(max_examples=40, deadline=None)
@given(lie_algebras())
def test_document_round_trip(c):
    doc = InputDocument(c)
    assert parse_document(emit_document(doc)) == doc


def test_document_errors_carry_lines():
    text = '{\n "structure_constants": [\n  {"i": 0, "j": 1, "coefficients": {"2": 1}},\n' \
           '  {"i": 0, "j": 1, "coefficients": {"1": "x"}}\n ]\n}'
    with pytest.raises(InputError) as exc:
        parse_document(text)
    assert exc.value.line == 4
    with pytest.raises(InputError, match="line 1"):
        parse_document("{")
    with pytest.raises(InputError, match="i < j"):
        parse_document('{"structure_constants": [{"i": 2, "j": 1, "coefficients": {}}]}')
    with pytest.raises(InputError, match="tolerance"):
        parse_document('{"mode": "exact", "tolerance": 0.1, "structure_constants": []}')
    with pytest.raises(InputError, match="key"):
        parse_document('{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"3": 1}}]}')


def test_float_document():
    doc = parse_document('{"mode": "float", "tolerance": 1e-6, '
                         '"structure_constants": [{"i": 1, "j": 2, "coefficients": {"1": "1/3"}}]}')
    assert isinstance(doc.structure_constants[1, 1, 2], float)
    assert doc.effective_tolerance == 1e-6


def test_report_round_trip():
    rep = {"tau": Fraction(-3, 4), "k": [Fraction(2), Fraction(1, 3)], "flat": False, "labels": ["a"]}
    assert load_report(dump_report(rep)) == rep


def test_cli_example_classify(monkeypatch):
    code, doc, _ = run(["construct", "--construct", "example", "--a1", "1", "--a2", "3"])
    assert code == 0
    code, out, _ = run(["classify", "--format", "json"], stdin=doc, monkeypatch=monkeypatch)
    rep = json.loads(out)
    assert code == 0 and rep["membership"] == ["F9", "F10"]
    assert rep["class_parameters"]["mu"] == 1 and rep["class_parameters"]["nu"] == -6


def test_cli_abelian(monkeypatch):
    code, out, _ = run(["curvature"], stdin='{"structure_constants": []}', monkeypatch=monkeypatch)
    assert code == 0
    assert "membership: [F0]" in out and "flat: true" in out and "R: (all zero)" in out


def test_cli_curvature_F8():
    code, out, _ = run(["curvature", "--construct", "F8", "--alpha", "2", "--format", "json"])
    rep = load_report(out)
    cur = rep["curvature"]
    assert (cur["tau"], cur["k12"], cur["k01"], cur["k02"]) == (-8, 4, -4, -4)
    assert rep["defects"]["r3_identity"] == 0 and rep["defects"]["template"]["R_defect"] == 0


def test_cli_F10_flat():
    code, out, _ = run(["curvature", "--construct", "F10", "--alpha", "3"])
    assert code == 0 and "flat: true" in out


def test_cli_construct_F4_document():
    code, out, _ = run(["construct", "--construct", "F4", "--alpha", "1"])
    doc = parse_document(out)
    assert doc.structure_constants == construct_class_family(FamilySpec("F4", 1))
    assert doc.structure_constants[2, 0, 1] == 1 and doc.structure_constants[1, 0, 2] == -1
    code, out, _ = run(["construct", "--construct", "F1", "--alpha", "0", "--beta", "0"])
    assert json.loads(out)["structure_constants"] == []


@pytest.mark.parametrize("cid", FAMILY_IDS)
def test_construct_classify_round_trip(cid, monkeypatch):
    for a in DEFAULT_GRID:
        argv = ["construct", "--construct", cid, f"--alpha={a}"]
        if cid in TWO_PARAMETER:
            argv.append(f"--beta={-a}")
        _, doc, _ = run(argv)
        code, out, _ = run(["classify", "--format", "json"], stdin=doc, monkeypatch=monkeypatch)
        assert code == 0 and json.loads(out)["membership"] == [cid]


def test_cli_exit_codes(tmp_path, monkeypatch):
    dup = '{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"0": 1}},\n' \
          '{"i": 0, "j": 1, "coefficients": {"0": 2}}]}'
    code, _, err = run(["classify"], stdin=dup, monkeypatch=monkeypatch)
    assert code == 1 and "line 2" in err
    bad = '{"structure_constants": [{"i": 0, "j": 1, "coefficients": {"1": 1}}, ' \
          '{"i": 1, "j": 2, "coefficients": {"0": 1}}]}'
    p = tmp_path / "bad.json"
    p.write_text(bad)
    code, _, err = run(["classify", "--input", str(p)])
    assert code == 2 and "Jacobi" in err
    code, _, _ = run(["construct", "--construct", "F5", "--alpha", "1", "--beta", "2"])
    assert code == 1
    code, _, _ = run(["classify", "--input", str(tmp_path / "missing.json")])
    assert code == 1
    code, _, _ = run(["frobnicate"])
    assert code == 1


def test_cli_float_mode():
    code, out, _ = run(["curvature", "--construct", "F5", "--alpha", "1/3", "--mode", "float",
                        "--tolerance", "1e-8", "--format", "json"])
    rep = json.loads(out)
    assert code == 0 and rep["input"]["mode"] == "float"
    assert abs(rep["curvature"]["tau"] + 6 / 9) < 1e-12
    code, _, err = run(["classify", "--construct", "F5", "--alpha", "1", "--tolerance", "1e-6"])
    assert code == 1


def test_pretty_prints_only_nonzero_sorted():
    _, out, _ = run(["curvature", "--construct", "F1", "--alpha", "2", "--beta", "1"])
    block = out.split("  R:\n")[1].split("  rho:")[0]
    assert block.strip().splitlines() == ["1212: 3"]
