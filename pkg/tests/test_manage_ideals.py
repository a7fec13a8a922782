import json
import sys
from pathlib import Path

import pytest

import catalog

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tools"))

import manage_ideals  # noqa: E402


@pytest.fixture
def folder(tmp_path):
    d = tmp_path / "ideals"
    d.mkdir()
    manage_ideals.write_json(d / "cusp.json", catalog.monomial_curve_Y(2).to_dict())
    manage_ideals.write_json(d / "z3.json", catalog.artinian_Zr(3).to_dict())
    return d


def test_validate_clean_folder(folder, capsys):
    assert manage_ideals.main(["--dir", str(folder), "validate"]) == 0
    assert "0 with problems" in capsys.readouterr().out


def test_validate_reports_broken_documents(folder, capsys):
    (folder / "bad.json").write_text(json.dumps({"schema": "singularity-ideal/1", "ring": {"variables": ["x"]},
                                                 "generators": ["y^2"]}), encoding="utf-8")
    assert manage_ideals.main(["--dir", str(folder), "validate"]) == 2
    assert "bad.json" in capsys.readouterr().out


def test_rename_variable_rewrites_generators(folder):
    code = manage_ideals.main(["--dir", str(folder), "rename-variable", "--old", "z1", "--new", "u"])
    assert code == 0
    doc = manage_ideals.load_json(folder / "cusp.json")
    assert doc["ring"]["variables"] == ["u", "z2"]
    assert doc["generators"] == ["u^3 - z2^2"]
    # documents without the variable are left alone
    assert manage_ideals.load_json(folder / "z3.json")["ring"]["variables"] == ["x1", "x2", "x3"]


def test_rename_dry_run_changes_nothing(folder):
    before = (folder / "cusp.json").read_text(encoding="utf-8")
    manage_ideals.main(["--dir", str(folder), "rename-variable", "--old", "z2", "--new", "v", "--dry-run"])
    assert (folder / "cusp.json").read_text(encoding="utf-8") == before


def test_rename_refuses_clashes():
    data = catalog.monomial_curve_Y(2).to_dict()
    with pytest.raises(manage_ideals.InvalidInput):
        manage_ideals.rename_variable(data, "z1", "z2")


def test_reorder_with_backup(folder):
    assert manage_ideals.main(["--dir", str(folder), "reorder", "--order", "lex", "--backup"]) == 0
    assert manage_ideals.load_json(folder / "z3.json")["order"] == "lex"
    assert len(list(folder.glob("*.bak.*"))) == 2
