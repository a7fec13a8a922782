"""
Tables and documents for tangent, ladder and catalog results: pandas DataFrames rendered as
text/CSV/JSON, Excel workbooks (one sheet per family) and an A4 PDF verification report.
"""
import logging
import os
from typing import Dict, List, Optional, Sequence

import pandas as pd
from reportlab.lib import colors
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import mm
from reportlab.platypus import KeepTogether, Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from core import InvalidInput, dumps

log = logging.getLogger(__name__)

# =========================
# Config
# =========================
LADDER_COLUMNS = ["family", "n", "context", "i", "quantity", "ladder", "formula", "engine", "status", "note"]
TANGENT_COLUMNS = ["descriptor", "i", "value", "method", "status"]
CATALOG_COLUMNS = ["label", "family", "params", "embdim", "seed", "expected"]

TITLE = "Obstruction ladder verification"
PAGE_SIZE = A4
MARGINS = dict(left=15 * mm, right=15 * mm, top=16 * mm, bottom=16 * mm)

STATUS_COLOURS = {"OK": colors.HexColor("#E8F5E9"), "FAILED": colors.HexColor("#FDECEA"),
                  "REFUSED": colors.HexColor("#EEEEEE")}

# =========================
# Styles
# =========================
styles = getSampleStyleSheet()

title_style = ParagraphStyle("DocTitle",
    parent=styles["Title"], fontName="Helvetica-Bold",
    fontSize=16, leading=20, spaceAfter=6, alignment=1
)
subtitle_style = ParagraphStyle("DocSubtitle",
    parent=styles["Normal"], fontName="Helvetica",
    fontSize=10, leading=14, spaceAfter=10, alignment=1
)
hdr_style = ParagraphStyle("FamilyHeader",
    parent=styles["Heading3"], fontName="Helvetica-Bold",
    fontSize=12, leading=14, spaceAfter=4
)
cell_style = ParagraphStyle("Cell",
    parent=styles["Normal"], fontName="Helvetica",
    fontSize=7, leading=9
)


# =========================
# DataFrames
# =========================
def ladder_frame(reports: Sequence) -> pd.DataFrame:
    rows = [row.to_dict() for rep in reports for row in rep.rows]
    df = pd.DataFrame(rows, columns=LADDER_COLUMNS)
    if not df.empty:
        df = df.sort_values(["family", "n", "context", "i"], kind="stable").reset_index(drop=True)
    return df


def tangent_frame(report) -> pd.DataFrame:
    status = report.status
    bad = set(report.disagreements())
    rows = []
    for e in report.entries:
        d = e.to_dict()
        rows.append({"descriptor": report.descriptor, "i": d["i"], "value": d["value"],
                     "method": d["method"], "status": "FAILED" if e.index in bad else status})
    return pd.DataFrame(rows, columns=TANGENT_COLUMNS)


def catalog_frame(manifest: Dict[str, object]) -> pd.DataFrame:
    rows = []
    for e in manifest.get("entries", []):
        rows.append({"label": e["label"], "family": e["family"],
                     "params": ",".join(str(p) for p in e["params"]), "embdim": e["embdim"],
                     "seed": e["seed"],
                     "expected": " ".join(f"{k}={v}" for k, v in sorted(e.get("expected", {}).items()))})
    return pd.DataFrame(rows, columns=CATALOG_COLUMNS)


def betti_frame(betti: Dict[int, Dict[int, int]]) -> pd.DataFrame:
    """Rows: homological index i; columns: internal degree j; entries b_(i,j)."""
    degrees = sorted({d for row in betti.values() for d in row})
    data = [[betti[i].get(d, 0) for d in degrees] for i in sorted(betti)]
    return pd.DataFrame(data, index=sorted(betti), columns=degrees)


def render(df: pd.DataFrame, fmt: str, document=None) -> str:
    """table -> aligned text, csv -> CSV, json -> the document itself (or the rows)."""
    if fmt == "table":
        if df.empty:
            return "(empty)\n"
        return df.fillna("").to_string(index=False) + "\n"
    if fmt == "csv":
        return df.to_csv(index=False, lineterminator="\n")
    if fmt == "json":
        return dumps(document if document is not None else df.to_dict(orient="records")) + "\n"
    raise InvalidInput(f"unknown output format {fmt!r}")


# =========================
# Excel
# =========================
def write_xlsx(df: pd.DataFrame, path: str, by: str = "family") -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with pd.ExcelWriter(path, engine="openpyxl") as xw:
        if df.empty or by not in df.columns:
            df.to_excel(xw, sheet_name="results", index=False)
        else:
            for key, g in df.groupby(by, sort=True):
                g.to_excel(xw, sheet_name=str(key)[:31], index=False)
    log.info("[reports] wrote %s", path)


# =========================
# PDF
# =========================
def _footer_for(cfg: Dict[str, object]):
    text = f"field {cfg.get('field', 'QQ')} | seed {cfg.get('seed', '')} | order {cfg.get('order', '')}"

    def footer(canvas, doc):
        canvas.saveState()
        w, h = PAGE_SIZE
        y = 9 * mm
        canvas.setFont("Helvetica", 8)
        canvas.setFillColor(colors.gray)
        canvas.drawCentredString(w / 2, y + 3 * mm, text)
        canvas.drawCentredString(w / 2, y, f"page {doc.page}")
        canvas.restoreState()

    return footer


def build_family_block(family: str, g: pd.DataFrame) -> List:
    cols = [c for c in LADDER_COLUMNS if c != "family"]
    data = [[Paragraph(f"<b>{c}</b>", cell_style) for c in cols]]
    for _, r in g.iterrows():
        data.append([Paragraph("" if pd.isna(r[c]) else str(r[c]), cell_style) for c in cols])
    widths = [10 * mm, 16 * mm, 8 * mm, 52 * mm, 14 * mm, 14 * mm, 14 * mm, 18 * mm, None]
    table = Table(data, colWidths=widths, hAlign="LEFT", repeatRows=1)
    ts = TableStyle([
        ("BOX", (0, 0), (-1, -1), 0.75, colors.black),
        ("BACKGROUND", (0, 0), (-1, 0), colors.HexColor("#DDDDDD")),
        ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
        *[("LINEABOVE", (0, r), (-1, r), 0.25, colors.lightgrey) for r in range(1, len(data))]
    ])
    status_col = cols.index("status")
    for k, (_, r) in enumerate(g.iterrows(), start=1):
        colour = STATUS_COLOURS.get(str(r["status"]))
        if colour is not None:
            ts.add("BACKGROUND", (status_col, k), (status_col, k), colour)
    table.setStyle(ts)
    return [Paragraph(f"Family: {family}", hdr_style), table]


def write_pdf(df: pd.DataFrame, path: str, cfg: Optional[Dict[str, object]] = None) -> None:
    cfg = cfg or {}
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    doc = SimpleDocTemplate(
        path, pagesize=PAGE_SIZE,
        leftMargin=MARGINS["left"], rightMargin=MARGINS["right"],
        topMargin=MARGINS["top"], bottomMargin=MARGINS["bottom"]
    )
    elements = [Paragraph(TITLE, title_style)]
    failed = int((df["status"] == "FAILED").sum()) if not df.empty else 0
    elements.append(Paragraph(f"{len(df)} rows, {failed} failed", subtitle_style))
    if not df.empty:
        for family, g in df.groupby("family", sort=True):
            elements.append(KeepTogether(build_family_block(str(family), g)))
            elements.append(Spacer(1, 6 * mm))
    doc.build(elements, onFirstPage=_footer_for(cfg), onLaterPages=_footer_for(cfg))
    log.info("[reports] wrote %s", path)
