import json
from importlib import resources

import jsonschema
import pytest

from weilad.cli import main

SCALAR = {"oneOf": [{"type": "number"}, {"type": "string"}]}

SCHEMAS = {
    "algebra_info": {
        "type": "object",
        "required": ["name", "dim", "basis", "nilpotency_index", "multiplication"],
        "properties": {
            "dim": {"type": "integer", "minimum": 1},
            "basis": {"type": "array", "items": {"type": "string"}},
            "nilpotency_index": {"type": "integer", "minimum": 1},
            "multiplication": {"type": "object"},
        },
    },
    "tensor": {
        "type": "object",
        "required": ["algebra", "incl1", "incl2"],
    },
    "jet": {
        "type": "object",
        "required": ["fn", "at", "order", "normalization", "values", "series"],
        "properties": {"values": {"type": "array", "items": SCALAR}},
    },
    "partials": {
        "type": "object",
        "required": ["fn", "at", "orders", "entries"],
        "properties": {
            "entries": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["orders", "values"],
                    "properties": {"orders": {"type": "array", "items": {"type": "integer"}},
                                   "values": {"type": "array", "items": SCALAR}},
                },
            }
        },
    },
    "morphism": {
        "type": "object",
        "required": ["source", "target", "result"],
        "properties": {"result": {"type": "object", "required": ["coeffs", "text"]}},
    },
    "laws": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["law", "model", "scalar_mode", "instances_run",
                         "failures", "exact", "passed"],
        },
    },
    "model": {
        "type": "object",
        "required": ["instance", "check", "passed", "reports"],
    },
    "error": {
        "type": "object",
        "required": ["error", "message"],
    },
}


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_algebra_info_json(capsys):
    code, out = run(capsys, ["algebra", "info", "jet:3"])
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["algebra_info"])
    assert doc["dim"] == 4 and doc["nilpotency_index"] == 4


def test_algebra_info_base(capsys):
    code, out = run(capsys, ["algebra", "info", "base"])
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 1 and doc["nilpotency_index"] == 1


def test_algebra_tensor_json(capsys):
    code, out = run(capsys, ["algebra", "tensor", "dual:1", "jet:2"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["tensor"])
    assert code == 0 and doc["algebra"]["dim"] == 6


def test_jet_command_matches_series(capsys):
    code, out = run(capsys, ["jet", "--fn", "exp(x)", "--at", "0", "--order", "3"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["jet"])
    assert code == 0 and doc["values"] == [1.0, 1.0, 1.0, 1.0]


def test_jet_rational_mode(capsys):
    code, out = run(capsys, ["jet", "--fn", "x^3", "--at", "2", "--order", "2",
                             "--scalar", "rational", "--normalization", "raw"])
    doc = json.loads(out)
    assert code == 0 and doc["values"] == ["8", "12", "6"]


def test_partials_command(capsys):
    code, out = run(capsys, ["partials", "--fn", "x*y", "--at", "2,5",
                             "--orders", "1,1", "--scalar", "rational"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["partials"])
    got = {tuple(e["orders"]): e["values"][0] for e in doc["entries"]}
    assert got[(1, 1)] == "1" and got[(1, 0)] == "5" and got[(0, 1)] == "2"


def test_morphism_apply(capsys):
    code, out = run(capsys, [
        "morphism", "apply", "--from", "jet:2", "--to", "dual:1",
        "--images", "2*x", "--value", "1 + x + x^2",
    ])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["morphism"])
    assert code == 0 and doc["result"]["coeffs"] == ["1", "2"]


def test_morphism_apply_reports_ill_defined(capsys):
    code, out = run(capsys, [
        "morphism", "apply", "--from", "dual:1", "--to", "jet:2",
        "--images", "x", "--value", "x",
    ])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["error"])
    assert code == 1 and doc["error"] == "NotWellDefined"


def test_laws_run_json_and_exit_code(capsys):
    code, out = run(capsys, ["laws", "run", "--law", "L5", "--scalar", "rational"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["laws"])
    assert code == 0
    assert {r["law"] for r in doc} == {"L5"}


def test_laws_run_unknown_law(capsys):
    code, out = run(capsys, ["laws", "run", "--law", "L99"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["error"])
    assert code == 1


def test_laws_byte_identical_for_seed(capsys):
    _, first = run(capsys, ["laws", "run", "--law", "L3", "--seed", "5"])
    _, second = run(capsys, ["laws", "run", "--law", "L3", "--seed", "5"])
    assert first == second


def test_model_check_commands(capsys, tmp_path):
    src = resources.files("weilad").joinpath("data/instances/iso.json").read_text()
    path = tmp_path / "iso.json"
    path.write_text(src)
    for check in ("ccc", "slice-ccc", "exp-compat", "localization"):
        code, out = run(capsys, ["model", "check", "--input", str(path), "--check", check])
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMAS["model"])
        assert code == 0 and doc["passed"], check


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["model", "check", "--check", "ccc"])  # missing --input
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err2:
        main(["nonsense"])
    assert err2.value.code == 2


def test_algebra_file_input(capsys, tmp_path):
    path = tmp_path / "demo.alg"
    path.write_text("algebra demo\ngens a b\nrel a^2\nrel b^2\nrel a*b\n")
    code, out = run(capsys, ["algebra", "info", str(path)])
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 3 and doc["basis"] == ["1", "a", "b"]


def test_human_format(capsys):
    code, out = run(capsys, ["algebra", "info", "dual:2", "--format", "human"])
    assert code == 0 and "dim 3" in out


def test_max_enum_flag_renders_size_limit(capsys, tmp_path):
    src = resources.files("weilad").joinpath("data/instances/iso.json").read_text()
    path = tmp_path / "iso.json"
    path.write_text(src)
    code, out = run(capsys, ["model", "check", "--input", str(path),
                             "--check", "ccc", "--max-enum", "2"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["error"])
    assert code == 1 and doc["error"] == "SizeLimit"


def test_jet_accepts_function_files(capsys, tmp_path):
    path = tmp_path / "wave.fn"
    path.write_text("vars t\nsin(t)\ncos(t)\n")
    code, out = run(capsys, ["jet", "--fn", str(path), "--at", "0", "--order", "2"])
    doc = json.loads(out)
    assert code == 0
    # two outputs per entry
    assert all(len(e["values"]) == 2 for e in doc["series"])
    assert doc["series"][1]["values"][0] == 1.0  # d/dt sin at 0


def test_partials_accepts_function_files(capsys, tmp_path):
    path = tmp_path / "bi.fn"
    path.write_text("vars u v\nu*v + v^2\n")
    code, out = run(capsys, ["partials", "--fn", str(path), "--at", "1,2",
                             "--orders", "1,1", "--scalar", "rational"])
    doc = json.loads(out)
    got = {tuple(e["orders"]): e["values"][0] for e in doc["entries"]}
    assert code == 0 and got[(1, 1)] == "1" and got[(0, 1)] == "5"


def test_laws_run_propagates_size_limit(capsys):
    code, out = run(capsys, ["laws", "run", "--law", "L4", "--max-enum", "2"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["error"])
    assert code == 1 and doc["error"] == "SizeLimit"
