import json
import shutil
from pathlib import Path

import pytest

from flagpos.main import main
from flagpos.polytope import subdivision_from_mu
from flagpos.reproduce import (
    cantcomplete_witnesses,
    cantlift_witnesses,
    cell_labels,
    heights_vector,
    load_golden,
    published_vector,
    reproduce,
)
from flagpos.schema import decode_matroid, decode_matroid_sequence
from flagpos.tropical import in_fldr_nonneg

GOLDEN_DIR = Path(__file__).resolve().parents[1] / "golden" / "v1"


def test_heights_vector_layout():
    mu = heights_vector(3, [0, 0, 1, 0, 0, 0])
    assert mu.ranks == (1, 2, 3)
    assert mu.constituents[0].value("3") == 1
    assert in_fldr_nonneg(mu)
    with pytest.raises(ValueError):
        heights_vector(4, [0] * 13)


def test_reproduce_figure1():
    report = reproduce("figure1")
    assert report.ok, report.diffs
    names = [p["name"] for p in report.results["panels"]]
    assert names == ["hypersimplex", "flag12"]


def test_reproduce_examples():
    report = reproduce("examples")
    assert report.ok, report.diffs
    results = report.results
    assert results["notreal"] == {"pom": False, "quotient": False}
    assert [p["failed_condition"] for p in results["quotient_pairs"]] == [3, 4]
    assert results["cantcomplete"]["witnesses"] == 0
    assert results["cantlift"] == {"flag_positroid": True, "witnesses": 0, "found": []}
    assert results["interval"]["untwisted_partner"] == "[2314,4312]"


def test_witness_searches(golden):
    data = golden("examples")
    cc = data["cantcomplete"]
    low = decode_matroid(cc["low"])
    high = decode_matroid(cc["high"])
    assert cantcomplete_witnesses(low, high, 2) == []
    flag = decode_matroid_sequence(data["cantlift"]["flag"])
    assert cantlift_witnesses(flag) == []


def test_reproduce_reports_golden_diffs(tmp_path, monkeypatch):
    for name in ("figure1", "examples"):
        shutil.copy(GOLDEN_DIR / f"{name}.json", tmp_path / f"{name}.json")
    doc = json.loads((tmp_path / "figure1.json").read_text(encoding="utf-8"))
    doc["panels"][0]["fvector"] = [6, 12, 9, 3]
    (tmp_path / "figure1.json").write_text(json.dumps(doc), encoding="utf-8")
    monkeypatch.setenv("FLAGPOS_GOLDEN_DIR", str(tmp_path))

    report = reproduce("figure1")
    assert not report.ok
    assert report.diffs == ["hypersimplex: fvector [6, 12, 9, 2] != [6, 12, 9, 3]"]
    assert main(["reproduce", "figure1"]) == 1


def test_missing_golden_file(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FLAGPOS_GOLDEN_DIR", str(tmp_path))
    with pytest.raises(FileNotFoundError):
        load_golden("figure1")
    assert main(["reproduce", "examples"]) == 2
    assert "Golden file not found" in capsys.readouterr().err


def test_unknown_target():
    with pytest.raises(ValueError):
        reproduce("table3")


def test_published_vector_reads_complements():
    mu = published_vector(3, [0, 0, 1, 0, 0, 0])
    assert mu.ranks == (1, 2, 3)
    assert mu.constituents[1].value("12") == 1
    assert mu.constituents[0].value("3") == 0
    assert in_fldr_nonneg(mu)


@pytest.mark.parametrize("name, rows", [("table1", 14), ("table2", 9)])
def test_reproduce_tables(name, rows):
    report = reproduce(name, jobs=2)
    assert report.ok, report.diffs
    assert report.results["label_convention"] == "untwisted"
    assert report.results["passed"] == report.results["total"] == rows


def test_dual_rows_swap_cells_under_direct_reading(golden):
    rows = {row["row"]: row for row in golden("table1")["rows"]}
    sub = subdivision_from_mu(heights_vector(4, rows[2]["heights"]))
    assert cell_labels(sub, "untwisted") == sorted(rows[10]["cells"])


@pytest.mark.parametrize("name, number", [("table1", 3), ("table2", 4)])
def test_printed_heights_are_reported_not_raised(name, number, tmp_path, monkeypatch):
    for table in ("table1", "table2"):
        shutil.copy(GOLDEN_DIR / f"{table}.json", tmp_path / f"{table}.json")
    path = tmp_path / f"{name}.json"
    doc = json.loads(path.read_text(encoding="utf-8"))
    row = next(r for r in doc["rows"] if r["row"] == number)
    row["heights"] = row["printed_heights"]
    path.write_text(json.dumps(doc), encoding="utf-8")
    monkeypatch.setenv("FLAGPOS_GOLDEN_DIR", str(tmp_path))

    report = reproduce(name)
    assert not report.ok
    assert f"row {number}: heights are not in the nonnegative flag Dressian" in report.diffs
    assert all(d.startswith(f"row {number}:") for d in report.diffs)
    assert main(["reproduce", name]) == 1
