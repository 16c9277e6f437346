import csv
import json

import pytest

from conedual.cli import main
from conedual.cones import Orthant, SecondOrder, full_space
from conedual.errors import InvalidInstance
from conedual.gallery import builtin_gallery, verify_gallery
from conedual.report import emit_reports
from conedual.serialize import (cone_from_json, cone_to_json, instance_from_json,
                                instance_to_json)
from conedual.solver import HyperplaneInstance

DEMO = {"id": "demo", "K1": {"variant": "orthant", "dim": 2},
        "K2": {"variant": "orthant", "dim": 2},
        "q": {"dim": 2, "coords": ["1", "2"]}, "h": {"dim": 2, "coords": ["1", "1"]}}
SYM = {"Jp": {"variant": "orthant", "dim": 2}, "Jd": {"variant": "orthant", "dim": 1},
       "A": [[1, 1]], "b": [1], "c": [1, 2]}


@pytest.fixture(scope="module")
def gallery():
    entries = builtin_gallery(verify=False)
    return entries, verify_gallery(entries)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


# --- serialization -------------------------------------------------------------------

def test_instance_round_trip(gallery):
    for e in gallery[0]:
        back = instance_from_json(json.loads(json.dumps(instance_to_json(e.instance))))
        assert back.q == e.instance.q and back.h == e.instance.h
        assert cone_to_json(back.K1) == cone_to_json(e.instance.K1)


def test_malformed_json_rejected():
    with pytest.raises(InvalidInstance):
        cone_from_json({"variant": "pyramid", "dim": 3})
    with pytest.raises(InvalidInstance):
        instance_from_json({"K1": {"variant": "orthant", "dim": 2}})


# --- reports ------------------------------------------------------------------------------

def test_one_svg_per_planar_entry(gallery, tmp_path):
    entries, checks = gallery
    paths = emit_reports([c.report for c in checks], "svg", tmp_path,
                         {e.id: e.instance for e in entries})
    assert sorted(p.name for p in paths) == [f"case-{x}.svg" for x in "abcdefg"]
    assert all(p.read_text().startswith("<svg") for p in paths)


def test_csv_cells_match_expected(gallery, tmp_path):
    entries, checks = gallery
    (path,) = emit_reports([c.report for c in checks], ["csv"], tmp_path)
    rows = list(csv.DictReader(path.open()))
    assert [r["table1_cell"] for r in rows] == [e.expected_cell for e in entries]


def test_empty_csv_has_header_only(tmp_path):
    (path,) = emit_reports([], "csv", tmp_path)
    assert path.read_text().splitlines() == [path.read_text().splitlines()[0]]
    assert path.read_text().startswith("instance_id,table1_cell")


def test_json_report(gallery, tmp_path):
    (path,) = emit_reports([c.report for c in gallery[1]], "json", tmp_path)
    data = json.loads(path.read_text())
    assert data[0]["instance_id"] == "case-a" and data[0]["primal"]["value"] == "1/1"


def test_io_error_names_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file"):
        emit_reports([], "csv", blocker / "sub")


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_reports([], "pdf", ".")


# --- command line -----------------------------------------------------------------------

def test_cli_solve(tmp_path, capsys):
    assert main(["solve", write(tmp_path, "i.json", DEMO)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["table1_cell"] == "abce" and out["gap"] == "0/1"


def test_cli_solve_csv_with_conditions(tmp_path, capsys):
    assert main(["solve", write(tmp_path, "i.json", DEMO), "--emit", "csv", "--conditions"]) == 0
    row = list(csv.DictReader(capsys.readouterr().out.splitlines()))[0]
    assert row["td"] == "holds" and row["primal_value"] == "1/1"


def test_cli_conditions(tmp_path, capsys):
    assert main(["conditions", write(tmp_path, "i.json", DEMO)]) == 0
    assert json.loads(capsys.readouterr().out)["sp"] == "holds"


def test_cli_convert(tmp_path, capsys):
    sym = write(tmp_path, "s.json", SYM)
    assert main(["convert", "--direction", "dual", sym]) == 0
    converted = capsys.readouterr().out
    assert main(["solve", write(tmp_path, "c.json", json.loads(converted))]) == 0
    assert json.loads(capsys.readouterr().out)["primal"]["value"] == "-1/1"


def test_cli_gallery(tmp_path, capsys):
    assert main(["gallery", "--emit", "csv,svg", "--outdir", str(tmp_path)]) == 0
    assert (tmp_path / "cells.csv").exists() and (tmp_path / "case-d.svg").exists()
    assert "MISMATCH" not in capsys.readouterr().out


def test_cli_propcheck(capsys):
    assert main(["propcheck", "--seed", "2", "--count", "5"]) == 0
    assert capsys.readouterr().out.startswith("property suite: seed=2 count=5")


def test_cli_invalid_input_exit_code(tmp_path, capsys):
    assert main(["solve", write(tmp_path, "bad.json", {"K1": 3})]) == 3
    assert main(["solve", str(tmp_path / "missing.json")]) == 3
    bad_h = dict(DEMO, h={"dim": 2, "coords": ["-1", "0"]})
    assert main(["solve", write(tmp_path, "h.json", bad_h)]) == 3


def test_cli_env_policy(tmp_path, monkeypatch):
    monkeypatch.setenv("CONEDUAL_POLICY", "nonsense")
    assert main(["solve", write(tmp_path, "i.json", DEMO)]) == 3
    monkeypatch.setenv("CONEDUAL_POLICY", "exact")
    soc = {"id": "s", "K1": {"variant": "soc", "dim": 3}, "K2": {"variant": "orthant", "dim": 3},
           "q": {"dim": 3, "coords": ["0", "0", "1"]}, "h": {"dim": 3, "coords": ["0", "0", "1"]}}
    assert main(["solve", write(tmp_path, "soc.json", soc)]) == 3


def test_cli_invariant_violation_exit_code(tmp_path, monkeypatch):
    from conedual import solver
    from conedual.errors import InternalInvariantViolation

    def broken(*args, **kwargs):
        raise InternalInvariantViolation("forced")
    monkeypatch.setattr(solver, "table1_cell", broken)
    assert main(["solve", write(tmp_path, "i.json", DEMO)]) == 2


def test_instance_json_matches_constructor():
    inst = HyperplaneInstance(SecondOrder(3), full_space(3), (0, 0, 1), (0, 0, 1), instance_id="x")
    assert instance_to_json(inst)["policy"] == "float"
    assert instance_to_json(HyperplaneInstance(Orthant(2), Orthant(2), (1, 2), (1, 1)))["policy"] == "exact"
