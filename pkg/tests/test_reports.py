import json

import pandas as pd
import pytest

import catalog
import ladder
import reports
from core import InvalidInput, RunConfig
from cotangent import tangent_report
from groebner import minimal_free_resolution

FORMULAS_ONLY = RunConfig(engine_max_n=0)


@pytest.fixture
def ladder_reports():
    return ladder.verify_family("rational", [4, 5], FORMULAS_ONLY)


def test_ladder_frame_columns_and_order(ladder_reports):
    df = reports.ladder_frame(ladder_reports)
    assert list(df.columns) == reports.LADDER_COLUMNS
    assert df["n"].is_monotonic_increasing
    assert set(df["engine"]) == {"ABSENT"}


def test_render_formats(ladder_reports):
    df = reports.ladder_frame(ladder_reports)
    csv = reports.render(df, "csv")
    assert csv.splitlines()[0] == ",".join(reports.LADDER_COLUMNS)
    assert "surface" in reports.render(df, "table")
    docs = [r.to_dict() for r in ladder_reports]
    assert json.loads(reports.render(df, "json", docs))[0]["schema"] == "ladder-report/1"
    assert reports.render(pd.DataFrame(columns=["a"]), "table") == "(empty)\n"
    with pytest.raises(InvalidInput):
        reports.render(df, "xml")


def test_tangent_frame_marks_disagreements(cfg):
    rep = tangent_report(catalog.artinian_Zr(3), [1], "artinian-zr(3)", {1: 14}, cfg)
    df = reports.tangent_frame(rep)
    assert list(df.columns) == reports.TANGENT_COLUMNS
    assert set(df["status"]) == {"FAILED"}


def test_catalog_frame(cfg):
    df = reports.catalog_frame(catalog.catalog_manifest(cfg))
    row = df[df["label"] == "artinian-zr(3)"].iloc[0]
    assert row["expected"] == "T0=9 T1=15 T2=18 length=4"


def test_betti_frame():
    res = minimal_free_resolution(catalog.fat_point(3), 6)
    df = reports.betti_frame(res.betti())
    assert list(df.index) == [0, 1, 2, 3]
    assert df.loc[1, 2] == 5
    assert df.loc[3, 5] == 1


def test_excel_workbook_has_one_sheet_per_family(tmp_path, ladder_reports):
    from openpyxl import load_workbook
    df = reports.ladder_frame(ladder_reports + ladder.verify_family("elliptic", [5], FORMULAS_ONLY))
    path = tmp_path / "out" / "ladder.xlsx"
    reports.write_xlsx(df, str(path))
    assert load_workbook(path).sheetnames == ["elliptic", "rational"]


def test_pdf_report_is_written(tmp_path, ladder_reports):
    path = tmp_path / "ladder.pdf"
    reports.write_pdf(reports.ladder_frame(ladder_reports), str(path), FORMULAS_ONLY.to_dict())
    assert path.read_bytes().startswith(b"%PDF")
