import json
import subprocess
import sys

import pytest

from evolkit.cli import (
    Report,
    dump_algebra_document,
    emit_report,
    main,
    parse_algebra_document,
    parse_element,
    run,
)
from evolkit.errors import DocumentError, InvalidInputError
from evolkit.gscalar import gs
from conftest import CORPUS

ALL_DOCS = sorted(CORPUS.glob("*.json"))


def doc(n, rows):
    return json.dumps({"dimension": n, "matrix": rows})


def test_parse_examples():
    A = parse_algebra_document(doc(2, [["-1/2", "3/4"], ["-1/3", "1/2"]]))
    assert A.omega(1, 2) == gs("3/4") and A.omega(2, 1) == gs("-1/3")
    B = parse_algebra_document(doc(2, [["1", "1"], ["0", "1"]]))
    assert B.square(2).coeffs == (1, 1)
    C = parse_algebra_document(doc(1, [["0"]]))
    assert C.columns == ((),)


def test_parse_complex_cells():
    A = parse_algebra_document((CORPUS / "gaussian3.json").read_text())
    assert A.omega(1, 1) == gs("i") and A.omega(3, 3) == gs("1-i")
    assert A.labels == ("x", "y", "z")


@pytest.mark.parametrize(
    "text,path",
    [
        ("{", "line 1"),
        ("[]", "$"),
        (doc(3, [["1"]]), "matrix"),
        (doc(2, [["1", "1"], ["1"]]), "matrix[1]"),
        (doc(2, [["1", "1/0"], ["0", "1"]]), "matrix[0][1]"),
        (doc(2, [["1", "0.5"], ["0", "1"]]), "matrix[0][1]"),
        (doc(2, [["1", 0.5], ["0", "1"]]), "matrix[0][1]"),
        (json.dumps({"dimension": 0, "matrix": []}), "dimension"),
        (json.dumps({"dimension": 1, "matrix": [[{"re": "1", "im": "x"}]]}), "matrix[0][0].im"),
        (json.dumps({"dimension": 1, "matrix": [["1"]], "labels": ["a", "b"]}), "labels"),
    ],
)
def test_parse_errors_name_the_field(text, path):
    with pytest.raises(DocumentError) as info:
        parse_algebra_document(text)
    assert info.value.path.startswith(path)


@pytest.mark.parametrize("path", ALL_DOCS, ids=lambda p: p.name)
def test_round_trip(path):
    A = parse_algebra_document(path.read_text())
    again = parse_algebra_document(dump_algebra_document(A))
    assert again == A
    assert dump_algebra_document(again) == dump_algebra_document(A)


def test_parse_element():
    assert parse_element("3,2", 2).coeffs == (3, 2)
    assert parse_element("0,0", 2).is_zero()
    assert parse_element("1/2,-1/3", 2).coeffs == (gs("1/2"), gs("-1/3"))
    with pytest.raises(InvalidInputError):
        parse_element("1,2,3", 2)
    with pytest.raises(InvalidInputError):
        parse_element("1,x", 2)


def _json(argv):
    code, reports = run(argv)
    return code, [json.loads(emit_report(r, "json")) for r in reports]


def test_classify_radical_example():
    code, (r,) = _json(["classify", str(CORPUS / "radical_2x2.json")])
    assert code == 0
    res = r["results"]
    assert res["radical_support"] == [1, 2] and res["classification"] == "radical"
    assert res["m_semisimple"]["value"] == "yes"
    assert r["input_digest"].startswith("sha256:")


def test_spectrum_command():
    code, (r,) = _json(["spectrum", str(CORPUS / "radical_2x2.json"), "--element", "-1/2,-1/3"])
    assert code == 0
    assert r["results"]["spectrum"]["exact_points"] == ["0", "1/12"]
    assert r["results"]["m_spectrum"]["exact_points"] == ["0", "1/12"]
    assert r["results"]["spectrum"]["certainty"] == "exact"
    code, (r,) = _json(["spectrum", str(CORPUS / "radical_2x2.json"), "--element", "3,2", "--m-only"])
    assert "spectrum" not in r["results"]


def test_radical_command_block7():
    code, (r,) = _json(["radical", str(CORPUS / "block7.json")])
    assert r["results"]["modular_indexes"] == [6, 7]
    assert r["results"]["radical_support"] == [1, 2, 3, 4, 5]


def test_other_commands():
    _, (r,) = _json(["ideals", str(CORPUS / "rad_ke1.json"), "--validate-support", "1"])
    assert r["results"]["validation"] == {"support": [1], "unit": ["0", "1"], "valid": True}
    _, (r,) = _json(["descendants", str(CORPUS / "chain3.json"), "--index", "1", "--generation", "2"])
    assert r["results"]["descendants"] == [2, 3] and r["results"]["generation"]["indexes"] == [3]
    _, (r,) = _json(["product", str(CORPUS / "radical_2x2.json"), "--a", "3,2", "--b", "2,4/3"])
    assert r["results"]["product"] == ["-1", "-2/3"]
    _, (r,) = _json(["quasi-inverse", str(CORPUS / "rad_ke1.json"), "--element", "1,0"])
    assert r["results"]["quasi_inverse"] is None


def test_empty_results_serialization():
    text = emit_report(Report("radical", "sha256:0"), "json")
    assert json.loads(text)["results"] == {}


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(doc(2, [["1/0", "1"], ["0", "1"]]))
    code, reports = run(["radical", str(bad), str(CORPUS / "rad_ke1.json")])
    assert code == 1 and reports[0].error and reports[1].error is None
    assert run(["radical", str(tmp_path / "missing.json")])[0] == 1
    assert run(["spectrum", str(CORPUS / "irrational2.json"), "--element", "1,1"])[0] == 0
    assert run(["spectrum", str(CORPUS / "irrational2.json"), "--element", "1,1", "--strict"])[0] == 3
    assert main(["spectrum", str(CORPUS / "swap2.json")]) == 1
    assert main(["descendants", str(CORPUS / "swap2.json"), "--index", "9"]) == 1


def test_global_flags_either_side():
    a = _json(["--seed", "4", "--trials", "5", "classify", str(CORPUS / "swap2.json")])
    b = _json(["classify", str(CORPUS / "swap2.json"), "--seed", "4", "--trials", "5"])
    assert a == b


def test_json_and_text_carry_same_scalars():
    code, (r,) = run(["spectrum", str(CORPUS / "radical_2x2.json"), "--element", "3,2"])
    as_json = json.loads(emit_report(r, "json"))
    text = emit_report(r, "text")
    lines = dict(line.split(" = ", 1) for line in text.splitlines())
    assert json.loads(lines["results.spectrum.exact_points"]) == as_json["results"]["spectrum"]["exact_points"]
    assert json.loads(lines["certainty"]) == as_json["certainty"]


def test_seed_gives_identical_bytes(monkeypatch):
    argv = [sys.executable, "-m", "evolkit", "classify", str(CORPUS / "gaussian3.json"), "--seed", "17"]
    outs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1


def test_env_seed(monkeypatch):
    monkeypatch.setenv("EVOLKIT_SEED", "17")
    env_run = _json(["classify", str(CORPUS / "gaussian3.json")])
    monkeypatch.delenv("EVOLKIT_SEED")
    flag_run = _json(["classify", str(CORPUS / "gaussian3.json"), "--seed", "17"])
    assert env_run == flag_run


def test_multiple_files_emit_list(capsys):
    code = main(["radical", str(CORPUS / "rad_ke1.json"), str(CORPUS / "block7.json")])
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and isinstance(out, list) and len(out) == 2
