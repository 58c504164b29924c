import csv
import io
import json
import sys
from typing import List, Optional

import numpy as np
from tabulate import tabulate

from weyl_moe.data.enums import ReportFormat

CSV_SIGNIFICANT_DIGITS = 12


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value


def dump_json(d: dict) -> str:
    return json.dumps(_jsonable(d), sort_keys=True, indent=4, separators=(",", ": "))


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{CSV_SIGNIFICANT_DIGITS}g}"
    if isinstance(value, (dict, list)):
        return json.dumps(_jsonable(value), sort_keys=True, separators=(",", ":"))
    return str(value)


def dump_csv(rows: List[dict], columns: List[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def dump_table(rows: List[dict], columns: List[str]) -> str:
    return tabulate(
        [[format_cell(row.get(c)) for c in columns] for row in rows],
        headers=columns,
    )


def render_report(
    report: dict, rows: List[dict], columns: List[str], fmt: ReportFormat
) -> str:
    """
    json renders the whole report including its config, csv and table only
    its rows, so they carry no config.
    """
    if fmt == ReportFormat.csv:
        return dump_csv(rows, columns)
    if fmt == ReportFormat.table:
        return dump_table(rows, columns) + "\n"
    return dump_json(report) + "\n"


def write_report(text: str, output: Optional[str] = None, stream=None):
    if output:
        with open(output, "w+") as out:
            out.write(text)
    else:
        (stream or sys.stdout).write(text)
