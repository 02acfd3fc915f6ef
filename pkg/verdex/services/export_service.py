from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter
from pydantic import BaseModel

from verdex.schemas.report import NumberOut, ReportOut


logger = logging.getLogger(__name__)

HeaderFill = PatternFill("solid", fgColor="0F172A")
HeaderFont = Font(color="FFFFFF", bold=True)
TitleFont = Font(size=14, bold=True)
SubtitleFont = Font(size=11, color="606C80")
ZebraFill = PatternFill("solid", fgColor="F8FAFC")
FailFill = PatternFill("solid", fgColor="FEE2E2")
ThinBorder = Border(
    left=Side(style="thin", color="CBD5F5"),
    right=Side(style="thin", color="CBD5F5"),
    top=Side(style="thin", color="CBD5F5"),
    bottom=Side(style="thin", color="CBD5F5"),
)

CASE_COLUMNS = ["index", "suite", "identity", "algebra", "verdict", "defect", "params", "values", "detail"]


def to_json(model: BaseModel) -> str:
    """Byte-stable JSON: sorted keys, aliases, fixed indentation, trailing newline."""

    payload = model.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(model: BaseModel, path: Path | str) -> Path:
    path = Path(path)
    path.write_text(to_json(model), encoding="utf-8")
    logger.info("wrote %s", path)
    return path


def _number_text(number: NumberOut) -> str:
    if number.value is None:
        return "-inf" if number.kind.value == "exponent" else ""
    if number.base is not None:
        return f"{number.base}^{number.value}"
    return str(number.value)


def case_rows(report: ReportOut) -> list[list[str | int]]:
    rows: list[list[str | int]] = []
    for case in report.cases:
        params = ";".join(f"{key}={case.params[key]}" for key in sorted(case.params))
        values = ";".join(f"{key}={_number_text(case.values[key])}" for key in sorted(case.values))
        rows.append(
            [
                case.index,
                case.suite,
                case.identity,
                case.algebra,
                case.verdict,
                _number_text(case.defect),
                params,
                values,
                case.detail or "",
            ]
        )
    return rows


def write_csv(report: ReportOut, path: Path | str) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CASE_COLUMNS)
        writer.writerows(case_rows(report))
    logger.info("wrote %d rows to %s", len(report.cases), path)
    return path


def _style_header_row(sheet, titles: list[str], start_row: int = 1) -> int:
    for idx, title in enumerate(titles, start=1):
        cell = sheet.cell(row=start_row, column=idx)
        cell.value = title
        cell.font = HeaderFont
        cell.fill = HeaderFill
        cell.alignment = Alignment(horizontal="center", vertical="center")
        cell.border = ThinBorder
    return start_row + 1


def _autofit_columns(sheet, max_column: int, minimum: int = 10) -> None:
    for col_idx in range(1, max_column + 1):
        letter = get_column_letter(col_idx)
        longest = max((len(str(cell.value)) for cell in sheet[letter] if cell.value is not None), default=0)
        sheet.column_dimensions[letter].width = max(minimum, min(longest + 4, 60))


def _build_summary_sheet(sheet, report: ReportOut) -> None:
    sheet.title = "Summary"
    sheet["A1"] = f"verdex report: {report.algebra}"
    sheet["A1"].font = TitleFont
    sheet["A2"] = f"ring {report.ring}, {report.norm} norm, seed {report.seed}, schema v{report.schema_version}"
    sheet["A2"].font = SubtitleFont
    row = _style_header_row(sheet, ["Verdict", "Cases"], start_row=4)
    counts = report.summary.model_dump()
    for offset, key in enumerate(["total", "exact_zero", "nonzero", "inconclusive", "probe", "certified"]):
        label = sheet.cell(row=row + offset, column=1, value=key.replace("_", "-"))
        value = sheet.cell(row=row + offset, column=2, value=counts[key])
        for cell in (label, value):
            cell.border = ThinBorder
        if key == "nonzero" and counts[key]:
            value.fill = FailFill
    _autofit_columns(sheet, 2, minimum=14)


def _build_cases_sheet(sheet, report: ReportOut) -> None:
    header_row = _style_header_row(sheet, [title.title() for title in CASE_COLUMNS])
    sheet.freeze_panes = sheet[f"A{header_row}"]
    if not report.cases:
        empty_cell = sheet.cell(row=header_row, column=1, value="No cases")
        empty_cell.font = Font(color="64748B")
        _autofit_columns(sheet, len(CASE_COLUMNS))
        return
    for offset, values in enumerate(case_rows(report)):
        row_idx = header_row + offset
        failed = values[4] == "nonzero"
        for column, value in enumerate(values, start=1):
            cell = sheet.cell(row=row_idx, column=column, value=value)
            cell.border = ThinBorder
            cell.alignment = Alignment(horizontal="center" if column in (1, 5) else "left")
            if failed:
                cell.fill = FailFill
            elif offset % 2:
                cell.fill = ZebraFill
    _autofit_columns(sheet, len(CASE_COLUMNS))


def write_xlsx(report: ReportOut, path: Path | str) -> Path:
    path = Path(path)
    workbook = Workbook()
    _build_summary_sheet(workbook.active, report)
    _build_cases_sheet(workbook.create_sheet("Cases"), report)
    workbook.save(path)
    logger.info("wrote workbook %s", path)
    return path
