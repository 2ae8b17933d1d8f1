import io
import json

import pytest

from flagpos.main import COMMANDS, main
from flagpos.polytope import CertifierDisagreement


U23 = {"n": 3, "rank": 2, "bases": [[1, 2], [1, 3], [2, 3]]}
U24 = {"n": 4, "rank": 2, "bases": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]}
FIG1 = {"n": 4, "r": 2, "coords": [1, 0, 0, 0, 0, 1]}


@pytest.fixture
def run(tmp_path, capsys):
    """Записать вход во временный файл, вызвать main и вернуть (код, JSON из stdout)."""

    def call(command, doc, *extra):
        path = tmp_path / "input.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        rc = main([command, "--in", str(path), *extra])
        out = capsys.readouterr().out
        return rc, (json.loads(out) if out.strip() else None)

    return call


def test_check_matroid(run):
    rc, data = run("check-matroid", U24)
    assert rc == 0
    assert data["command"] == "check-matroid"
    assert data["results"] == {"matroid": True, "loops": [], "coloops": []}
    assert len(data["inputs"]) == 64

    rc, data = run("check-matroid", {"n": 4, "rank": 2, "bases": [[1, 2], [3, 4]]})
    assert rc == 1
    assert data["results"] == {"matroid": False}


def test_check_positroid(run):
    rc, data = run("check-positroid", U24)
    assert rc == 0 and data["results"]["positroid"] is True

    rc, data = run("check-positroid", {"n": 4, "rank": 2, "bases": [[1, 2], [1, 4], [2, 3], [3, 4]]})
    assert rc == 1
    assert data["results"]["positroid"] is False
    assert data["results"]["necklace"] == {"n": 4, "d": 2, "sets": [[1, 2], [2, 3], [3, 4], [1, 4]]}


def test_necklace_both_directions(run):
    rc, data = run("necklace", {"n": 4, "rank": 2, "bases": [[1, 2], [1, 4], [2, 4]]})
    assert rc == 0
    assert data["results"]["necklace"]["sets"] == [[1, 2], [2, 4], [1, 4], [1, 4]]

    rc, data = run("necklace", {"n": 4, "d": 1, "sets": [[1], [2], [4], [4]]})
    assert rc == 0
    assert data["results"]["positroid"]["bases"] == [[1], [2], [4]]

    rc, data = run("necklace", {"n": 4, "d": 2, "sets": [[1, 2], [3, 4], [1, 2], [1, 2]]})
    assert rc == 1 and data["results"] == {"necklace": False}


def test_quotient_from_matroids_and_necklaces(run, golden):
    notreal = golden("examples")["notreal"]
    rc, data = run("quotient", {"low": notreal["low"], "high": notreal["high"]})
    assert rc == 1
    assert data["results"]["quotient"] is False
    assert "failed_condition" in data["results"]

    pair = golden("examples")["quotient_pairs"][0]
    rc, data = run("quotient", {"I": pair["I"], "J": pair["J"]})
    assert rc == 1 and data["results"]["failed_condition"] == 3

    rc, data = run("quotient", {"low": {"n": 3, "rank": 1, "bases": [[1], [2], [3]]}, "high": U23})
    assert rc == 0 and data["results"]["quotient"] is True


def test_pom(run):
    flag = [{"n": 3, "rank": 1, "bases": [[1], [3]]}, {"n": 3, "rank": 2, "bases": [[1, 3]]}]
    rc, data = run("pom", flag)
    assert rc == 0
    assert data["results"] == {"pom": True, "ranks": [1, 2]}

    rc, data = run("pom", {"constituents": [flag[0], U23]})
    assert rc == 1 and data["results"]["pom"] is False


def test_fldr(run):
    rc, data = run("fldr", FIG1)
    assert rc == 0
    assert data["results"]["in_fldr_nonneg"] is True
    assert data["results"]["in_dressian"] is True
    assert data["results"]["violated"] == []

    rc, data = run("fldr", {"n": 4, "r": 2, "coords": [0, 1, 0, 0, 1, 0]})
    assert rc == 1
    assert data["results"]["in_dressian"] is True
    assert data["results"]["violated"] == ["x12·x34 - x13·x24 + x14·x23"]


def test_fldr_rank_gap(run):
    doc = [{"n": 4, "r": 1, "coords": [0, 0, 0, 0]}, {"n": 4, "r": 3, "coords": [0, 0, 0, 0]}]
    rc, data = run("fldr", doc)
    assert rc == 2 and data is None

    rc, data = run("fldr", doc, "--nonconsecutive")
    assert rc == 0
    assert data["results"]["experimental"] is True
    assert data["results"]["ranks"] == [1, 3]


def test_subdivide_figure_panel(run, golden):
    panel = golden("figure1")["panels"][0]
    rc, data = run("subdivide", panel["input"])
    assert rc == 0
    results = data["results"]
    assert results["fvector"] == panel["fvector"]
    assert results["positroidal"] is True
    assert sorted(c["bases"] for c in results["cells"]) == sorted(panel["cell_bases"])


def test_envelope_of_interval_and_flag(run, golden):
    interval = golden("examples")["interval"]
    rc, data = run("envelope", {"u": "1243", "v": "4213"})
    assert rc == 0
    assert data["results"]["permutations"] == interval["permutations"]
    assert len(data["results"]["constituents"]) == 4

    flag = {"constituents": [{"n": 3, "rank": 1, "bases": [[1], [2], [3]]}, {"n": 3, "rank": 2, "bases": [[1, 2], [2, 3]]}]}
    rc, data = run("envelope", flag, "--convention", "twisted")
    assert rc == 1
    assert data["results"]["is_interval"] is False
    assert data["results"]["envelope"] == {"u": [1, 2, 3], "v": [3, 2, 1]}
    assert data["results"]["convention"] == "twisted"


def test_schema_error_returns_two(run, capsys):
    rc = main(["check-matroid", "--in", "/nonexistent/input.json"])
    assert rc == 2
    assert "[ERROR]" in capsys.readouterr().err

    rc, data = run("check-matroid", {"n": 4})
    assert rc == 2 and data is None


def test_schema_error_names_the_pointer(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 4, "bases": [[1, 2]]}), encoding="utf-8")
    assert main(["check-matroid", "--in", str(path)]) == 2
    assert "invalid input at /rank" in capsys.readouterr().err


def test_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(U23)))
    assert main(["check-positroid"]) == 0
    assert json.loads(capsys.readouterr().out)["results"]["positroid"] is True


def test_out_file_and_seed(tmp_path, capsys):
    src = tmp_path / "in.yml"
    src.write_text("n: 3\nrank: 2\nbases: [[1, 2], [1, 3], [2, 3]]\n", encoding="utf-8")
    dst = tmp_path / "out.json"
    assert main(["check-matroid", "--in", str(src), "--out", str(dst), "--seed", "5"]) == 0
    assert capsys.readouterr().out == ""
    data = json.loads(dst.read_text(encoding="utf-8"))
    assert data["seed"] == 5 and data["results"]["matroid"] is True


def test_bad_jobs_value(capsys):
    assert main(["reproduce", "figure1", "--jobs", "0"]) == 2
    assert "--jobs must be >= 1" in capsys.readouterr().err


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_certifier_disagreement_has_its_own_exit_code(tmp_path, monkeypatch, capsys):
    def broken(doc, args):
        raise CertifierDisagreement("necklace test says True, 0/∞ embedding says False")

    monkeypatch.setitem(COMMANDS, "pom", (broken, "Positively oriented flag matroid test"))
    path = tmp_path / "pair.json"
    path.write_text(json.dumps([U23]), encoding="utf-8")
    assert main(["pom", "--in", str(path)]) == 3
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "[ERROR] internal inconsistency: necklace test says True" in captured.err
