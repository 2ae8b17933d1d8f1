import json

from flagpos.output import RunReport, canonical_json, emit_output, inputs_digest
from flagpos.utils import set_verbose


def test_emit_output_to_stdout(capsys):
    emit_output({"b": 1, "a": "∅"}, None)
    out = capsys.readouterr().out
    assert json.loads(out) == {"a": "∅", "b": 1}
    assert out.index('"a"') < out.index('"b"')
    assert "∅" in out


def test_emit_output_to_file(tmp_path, capsys):
    out_path = tmp_path / "result.json"
    set_verbose(True)
    emit_output({"ok": True}, str(out_path), verbose=True)
    assert json.loads(out_path.read_text(encoding="utf-8")) == {"ok": True}
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "[INFO] result saved to" in captured.err


def test_inputs_digest_is_key_order_independent():
    a = inputs_digest({"n": 4, "bases": [[1, 2]]})
    b = inputs_digest({"bases": [[1, 2]], "n": 4})
    assert a == b
    assert len(a) == 64
    assert a != inputs_digest({"n": 5, "bases": [[1, 2]]})
    assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'


def test_run_report_optional_fields():
    report = RunReport.start("pom", {"x": 1})
    report.results = {"pom": True}
    data = report.finish().as_dict()
    assert set(data) == {"command", "inputs", "results", "timing"}
    assert data["inputs"] == inputs_digest({"x": 1})
    assert data["timing"] >= 0
    assert report.ok

    seeded = RunReport.start("properties", None, seed=7)
    seeded.diffs.append("suite closure: 1 failure")
    data = seeded.as_dict()
    assert data["seed"] == 7
    assert data["diffs"] == ["suite closure: 1 failure"]
    assert not seeded.ok
