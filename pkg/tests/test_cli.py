import json

import jsonschema
import pytest
from referencing import Registry, Resource

from orbitforge import cli
from orbitforge.oracle import ReconcileResult

try:
    from importlib.resources import files
except ImportError:  # pragma: no cover
    from importlib_resources import files


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _schema(name):
    return json.loads(files("orbitforge.schemas").joinpath(name).read_text())


def _registry():
    resources = []
    for name in ("label.schema.json", "orbit_report.schema.json", "cli_outputs.schema.json"):
        schema = _schema(name)
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def _validate(instance, schema_name, fragment=None):
    schema = _schema(schema_name)
    if fragment:
        schema = {"$ref": f"{schema['$id']}#/$defs/{fragment}"}
    jsonschema.validate(instance, schema, registry=_registry())


def test_orbits_table(capsys):
    code, out, _ = run(capsys, "orbits", "--dim", "5", "--type", "odd")
    assert code == 0
    assert out.count("\n") == 7  # header + 5 rows + total
    assert "total: 5" in out


def test_orbits_json_schema(capsys):
    code, out, _ = run(capsys, "orbits", "--dim", "4", "--type", "+", "--so", "--format", "json")
    assert code == 0
    data = json.loads(out)
    _validate(data, "cli_outputs.schema.json", "orbits")
    assert len(data["labels"]) == 4


def test_orbits_minus(capsys):
    code, out, _ = run(capsys, "orbits", "--dim", "4", "--type", "-")
    assert code == 0 and "total: 2" in out


def test_count_table_and_csv(capsys):
    code, out, _ = run(capsys, "count", "--series", "B", "--max-rank", "3")
    assert code == 0
    assert [line.split()[1] for line in out.strip().splitlines()[1:]] == ["2", "5", "10"]
    code, out, _ = run(capsys, "count", "--series", "SOD+", "--max-rank", "2", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines() == ["rank,value,enumeration", "1,1,1", "2,4,4"]
    code, out, _ = run(capsys, "count", "--series", "D-", "--max-rank", "2", "--format", "csv")
    assert out.strip().splitlines()[1:] == ["1,1,1", "2,2,2"]


def test_count_json_schema(capsys):
    code, out, _ = run(capsys, "count", "--series", "D+", "--max-rank", "4", "--format", "json")
    assert code == 0
    _validate(json.loads(out), "cli_outputs.schema.json", "count")


def test_pair_spec_examples(capsys):
    code, out, _ = run(capsys, "pair", "--symbol", "(3)_3(2)_2")
    assert code == 0 and out.strip() == "alpha=[2] beta=[]"
    code, out, _ = run(capsys, "pair", "--symbol", "(3)_2^2(1)_1", "--bits", "1")
    assert code == 0 and out.strip() == "alpha=[] beta=[3]"
    code, out, _ = run(capsys, "pair", "--symbol", "(3)_2^2(1)_1", "--format", "json")
    _validate(json.loads(out), "cli_outputs.schema.json", "pair")


def test_rep_zero_matrix(capsys):
    code, out, _ = run(capsys, "rep", "--symbol", "(1)_1^5", "--q", "2")
    assert code == 0
    assert "dim=5" in out
    t_lines = out.split("T:\n")[1].strip().splitlines()
    assert all(set(line.split()) == {"0"} for line in t_lines)
    code, out, _ = run(capsys, "rep", "--symbol", "(3)_2^2(1)_1", "--bits", "1", "--format", "json")
    data = json.loads(out)
    _validate(data, "cli_outputs.schema.json", "rep")
    assert data["label"]["bits"] == "1"


def test_verify_json_schema_and_exit(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "3", "--type", "odd", "--format", "json")
    assert code == 0
    data = json.loads(out)
    _validate(data, "orbit_report.schema.json")
    assert data["verified"] is True and data["orbit_count"] == 2


def test_verify_table(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "4", "--type", "+", "--so")
    assert code == 0
    assert "orbits: 4" in out and "verified" in out


def test_byte_identical_determinism(capsys):
    args = ("verify", "--dim", "4", "--type", "-", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    args = ("orbits", "--dim", "7", "--type", "odd", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "orbits", "--dim", "4", "--type", "odd")[0] == 2  # parity
    assert run(capsys, "orbits", "--dim", "5", "--type", "odd", "--so")[0] == 2
    assert run(capsys, "verify", "--dim", "5", "--type", "odd", "--q", "8")[0] == 2
    assert run(capsys, "pair", "--symbol", "(3)_2^2(1)_1", "--bits", "10")[0] == 2
    assert run(capsys, "pair", "--symbol", "not-a-symbol")[0] == 2
    assert run(capsys, "count", "--series", "B", "--max-rank", "99")[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "count", "--series", "Z", "--max-rank", "3")[0] == 2


def test_guard_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--dim", "8", "--type", "+")
    assert code == 3
    assert "large" in err


def test_mismatch_exit_1(capsys, monkeypatch):
    def fake_reconcile(space, flavor="O", large=False, threads=None):
        import orbitforge.oracle as oracle

        report = oracle.orbit_partition(space, strict=False)
        return ReconcileResult(False, {"orbit_count": {"theory": 0, "brute_force": 1}}, report)

    monkeypatch.setattr(cli.oracle, "reconcile", fake_reconcile)
    code, out, _ = run(capsys, "verify", "--dim", "3", "--type", "odd")
    assert code == 1
    assert "MISMATCH" in out


def test_verify_timings_flag(capsys):
    _, out_plain, _ = run(capsys, "verify", "--dim", "3", "--type", "odd", "--format", "json")
    _, out_timed, _ = run(capsys, "verify", "--dim", "3", "--type", "odd", "--format", "json", "--timings")
    assert "timing" not in json.loads(out_plain)
    assert "timing" in json.loads(out_timed)
