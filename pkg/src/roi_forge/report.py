"""Report assembly and table exports (JSON, RFC-4180 CSV, Markdown).

The JSON report is the single machine-readable result: statement lines with
exact and rounded values, ROI, optional NPV/payback, the seven table
documents and all diagnostics. Rendering is deterministic: identical
scenario text yields byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .appraisal import Evaluation, format_roi
from .enrollment import table15_compat
from .money import Money, RoundingMode, decimal_string, round_rupiah
from .projection import YearSeries
from .scenario import Scenario
from .taxonomy import MATRIX_CELL_ORDER, classify_matrix

TABLE_NAMES = ("table9", "table10", "table11", "table15", "table18", "table19", "matrix")

_TABLE_TITLES = {
    "table9": "Biaya berjalan proyek",
    "table10": "Biaya operasional pembuatan laporan",
    "table11": "Penghematan biaya operasional pembuatan laporan",
    "table15": "Perkiraan pendapatan dari peningkatan jumlah mahasiswa baru",
    "table18": "Rekapitulasi efisiensi produktivitas kerja",
    "table19": "Arus kas bersih",
    "matrix": "Matrik manfaat",
}

_STATEMENT_LINES = (
    ("enrollment_benefit", "Penerimaan Mahasiswa baru"),
    ("productivity_benefit", "Peningkatan produktivitas manajemen tingkat atas"),
    ("net_economic_benefit", "Manfaat Ekonomi Bersih"),
    ("operational_savings", "Pengurangan Biaya Operasional"),
    ("pre_tax_income", "Pendapatan Sebelum Pajak"),
    ("tax", "Pajak"),
    ("running_costs", "Biaya Berjalan"),
    ("net_cash_flow", "Arus Kas Bersih"),
)


def _cell(m: Money, mode: RoundingMode) -> dict[str, Any]:
    return {"exact": m.to_decimal_string(), "rounded": round_rupiah(m, mode)}


def _series_row(name: str, series: YearSeries, mode: RoundingMode, **extra: Any) -> dict[str, Any]:
    row: dict[str, Any] = {"name": name}
    row.update(extra)
    row["exact"] = [v.to_decimal_string() for v in series]
    row["rounded"] = list(series.rounded(mode))
    return row


def _fraction_percent(f: Fraction) -> str:
    return decimal_string(f * 100)


def build_tables(ev: Evaluation, scenario: Scenario) -> dict[str, Any]:
    """The seven named table documents as JSON-ready dicts."""
    mode = scenario.options.rounding
    years = list(range(1, ev.horizon + 1))

    table9 = {
        "title": _TABLE_TITLES["table9"],
        "years": years,
        "rows": [_series_row(line.name, series, mode) for line, series in ev.running_lines],
        "total": _series_row("Total Biaya berjalan", ev.running_total, mode),
    }
    table10 = {
        "title": _TABLE_TITLES["table10"],
        "years": years,
        "rows": [_series_row(line.name, series, mode) for line, series in ev.operational_lines],
        "total": _series_row("Total Biaya Operasional", ev.operational_total, mode),
    }
    table11 = {
        "title": _TABLE_TITLES["table11"],
        "years": years,
        "rows": [
            _series_row(
                f"{line.name} ({_fraction_percent(line.saving_fraction)}%)", series, mode
            )
            for line, series in ev.saving_lines
        ],
        "total": _series_row("Total Penghematan", ev.saving_total, mode),
    }

    compat = scenario.options.table15_compat
    counts = dict(ev.program_counts)

    def _revenue_view(series: YearSeries) -> YearSeries:
        return table15_compat(series) if compat else series

    table15_rows = [
        _series_row(name, _revenue_view(series), mode, intake=list(counts.get(name, ())))
        for name, series in ev.program_revenue
    ]
    intake_by_year = [
        sum(c[year - 1] for _, c in ev.program_counts) if ev.program_counts else 0
        for year in years
    ]
    table15 = {
        "title": _TABLE_TITLES["table15"],
        "compat_divisor_applied": compat,
        "years": years,
        "rows": table15_rows,
        "total": _series_row(
            "Total", _revenue_view(ev.enrollment_revenue), mode, intake=intake_by_year
        ),
    }
    table18 = {
        "title": _TABLE_TITLES["table18"],
        "years": years,
        "rows": [_series_row("Efisiensi produktivitas kerja", ev.productivity, mode)],
        "total": None,
    }

    statement_rows = []
    for field, label in _STATEMENT_LINES:
        if field == "tax" and scenario.options.tax_rate == 0:
            continue
        statement_rows.append({"label": label, **_cell(getattr(ev.statement, field), mode)})
    table19 = {
        "title": _TABLE_TITLES["table19"],
        "rows": statement_rows,
    }

    cells = classify_matrix(scenario.benefits.items)
    matrix = {
        "title": _TABLE_TITLES["matrix"],
        "cells": [
            {
                "tangibility": tang.value,
                "measurability": meas.value,
                "items": [{"id": item.id, "name": item.name} for item in cells[(tang, meas)]],
            }
            for tang, meas in MATRIX_CELL_ORDER
        ],
    }
    return {
        "table9": table9,
        "table10": table10,
        "table11": table11,
        "table15": table15,
        "table18": table18,
        "table19": table19,
        "matrix": matrix,
    }


def build_report(ev: Evaluation, scenario: Scenario) -> dict[str, Any]:
    """Full machine-readable report for one evaluation."""
    mode = scenario.options.rounding
    result = ev.result
    report: dict[str, Any] = {
        "schema_version": scenario.schema_version,
        "meta": {
            "name": scenario.meta.name,
            "currency": scenario.meta.currency,
            "description": scenario.meta.description,
        },
        "horizon": ev.horizon,
        "investment": {
            "staff": {
                "lines": [
                    {
                        "role": line.role,
                        "headcount": line.headcount,
                        "hourly_wage": line.hourly_wage.to_decimal_string(),
                        "total": cost.to_decimal_string(),
                    }
                    for line, cost in ev.staff_costs
                ],
                "total": ev.staff_total.to_decimal_string(),
            },
            "hardware": ev.hardware_total.to_decimal_string(),
            "network": ev.network_total.to_decimal_string(),
            "support": ev.support_total.to_decimal_string(),
            "total": ev.investment.to_decimal_string(),
        },
        "statement": {
            field: _cell(getattr(ev.statement, field), mode)
            for field, _ in _STATEMENT_LINES
        },
        "roi_percent": format_roi(result.roi_percent),
        "npv": round_rupiah(result.npv, mode) if result.npv is not None else None,
        "payback_year": result.payback_year,
        "enrollment": (
            {
                "per_student_net": _cell(ev.net_fee, mode),
                "intake": [{"program": name, "count": count} for name, count in ev.intake],
                "intake_total": ev.intake_total,
            }
            if ev.net_fee is not None
            else None
        ),
        "tables": build_tables(ev, scenario),
        "diagnostics": [
            {"severity": d.severity.value, "path": d.path, "message": d.message}
            for d in ev.diagnostics
        ],
    }
    return report


def render_report_json(report: dict[str, Any]) -> str:
    """Canonical JSON text; the CLI and the HTTP service return these exact bytes."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _group(n: int) -> str:
    return f"{n:,}"


def _csv_text(rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _year_table_csv(table: dict[str, Any], first_column: str) -> str:
    header = [first_column, "Varian"] + [f"Tahun ke-{y}" for y in table["years"]]
    rows: list[list[Any]] = [header]
    for row in table["rows"] + ([table["total"]] if table["total"] else []):
        rows.append([row["name"], "rounded"] + row["rounded"])
        rows.append([row["name"], "exact"] + row["exact"])
    return _csv_text(rows)


def _table15_csv(table: dict[str, Any]) -> str:
    header = ["Program Studi", "Varian"]
    for y in table["years"]:
        header += [f"Rata-rata ke-{y}", f"Tahun ke-{y}"]
    rows: list[list[Any]] = [header]
    for row in table["rows"] + [table["total"]]:
        rounded: list[Any] = [row["name"], "rounded"]
        exact: list[Any] = [row["name"], "exact"]
        for i in range(len(table["years"])):
            rounded += [row["intake"][i], row["rounded"][i]]
            exact += [row["intake"][i], row["exact"][i]]
        rows.append(rounded)
        rows.append(exact)
    return _csv_text(rows)


def _table19_csv(table: dict[str, Any]) -> str:
    rows = [["Manfaat dan Biaya", "Harga"]]
    for row in table["rows"]:
        rows.append([row["label"], row["rounded"]])
    return _csv_text(rows)


def _matrix_csv(table: dict[str, Any]) -> str:
    by_cell = {(c["tangibility"], c["measurability"]): c["items"] for c in table["cells"]}

    def cell_text(tang: str, meas: str) -> str:
        return "; ".join(f"{i['id']}. {i['name']}" for i in by_cell[(tang, meas)])

    rows = [
        ["", "Measurable", "Immeasurable"],
        ["Tangible", cell_text("tangible", "measurable"), cell_text("tangible", "immeasurable")],
        ["Intangible", cell_text("intangible", "measurable"), cell_text("intangible", "immeasurable")],
    ]
    return _csv_text(rows)


def _md_table(header: list[str], body: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in body:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def _year_table_md(name: str, table: dict[str, Any], first_column: str) -> str:
    header = [first_column] + [f"Tahun ke-{y}" for y in table["years"]]
    body = []
    for row in table["rows"] + ([table["total"]] if table.get("total") else []):
        body.append([row["name"]] + [_group(v) for v in row["rounded"]])
    return f"## {name}: {table['title']}\n\n" + _md_table(header, body)


def _table15_md(table: dict[str, Any]) -> str:
    header = ["Program Studi"]
    for y in table["years"]:
        header += [f"Rata-rata ke-{y}", f"Tahun ke-{y}"]
    body = []
    for row in table["rows"] + [table["total"]]:
        cells = [row["name"]]
        for i in range(len(table["years"])):
            cells += [str(row["intake"][i]), _group(row["rounded"][i])]
        body.append(cells)
    return f"## table15: {table['title']}\n\n" + _md_table(header, body)


def _table19_md(table: dict[str, Any]) -> str:
    body = [[row["label"], _group(row["rounded"])] for row in table["rows"]]
    return f"## table19: {table['title']}\n\n" + _md_table(["Manfaat dan Biaya", "Harga"], body)


def _matrix_md(table: dict[str, Any]) -> str:
    by_cell = {(c["tangibility"], c["measurability"]): c["items"] for c in table["cells"]}

    def cell_text(tang: str, meas: str) -> str:
        return "; ".join(f"{i['id']}. {i['name']}" for i in by_cell[(tang, meas)]) or "-"

    body = [
        ["Tangible", cell_text("tangible", "measurable"), cell_text("tangible", "immeasurable")],
        ["Intangible", cell_text("intangible", "measurable"), cell_text("intangible", "immeasurable")],
    ]
    return f"## matrix: {table['title']}\n\n" + _md_table(["", "Measurable", "Immeasurable"], body)


def export_tables(report: dict[str, Any], format: str) -> dict[str, str]:
    """Render the seven table documents; returns {document name: text}."""
    tables = report["tables"]
    if format == "json":
        return {
            name: json.dumps(tables[name], sort_keys=True, indent=2, ensure_ascii=False) + "\n"
            for name in TABLE_NAMES
        }
    if format == "csv":
        return {
            "table9": _year_table_csv(tables["table9"], "Biaya"),
            "table10": _year_table_csv(tables["table10"], "Jenis Biaya"),
            "table11": _year_table_csv(tables["table11"], "Jenis Penghematan"),
            "table15": _table15_csv(tables["table15"]),
            "table18": _year_table_csv(tables["table18"], "Rekapitulasi"),
            "table19": _table19_csv(tables["table19"]),
            "matrix": _matrix_csv(tables["matrix"]),
        }
    if format in ("md", "markdown"):
        return {
            "table9": _year_table_md("table9", tables["table9"], "Biaya"),
            "table10": _year_table_md("table10", tables["table10"], "Jenis Biaya"),
            "table11": _year_table_md("table11", tables["table11"], "Jenis Penghematan"),
            "table15": _table15_md(tables["table15"]),
            "table18": _year_table_md("table18", tables["table18"], "Rekapitulasi"),
            "table19": _table19_md(tables["table19"]),
            "matrix": _matrix_md(tables["matrix"]),
        }
    raise ValueError(f"unknown format {format!r}")


def render_report_markdown(report: dict[str, Any]) -> str:
    """Human-readable report: headline numbers, statement, then all tables."""
    lines = [f"# {report['meta']['name']}", ""]
    if report["meta"]["description"]:
        lines += [report["meta"]["description"], ""]
    lines += [
        f"- Horizon: {report['horizon']} years",
        f"- Investment: {_group(int(report['investment']['total']))} {report['meta']['currency']}",
        f"- ROI: {report['roi_percent']}%",
    ]
    if report["npv"] is not None:
        lines.append(f"- NPV: {_group(report['npv'])} {report['meta']['currency']}")
    if report["payback_year"] is not None:
        lines.append(f"- Payback: year {report['payback_year']}")
    lines.append("")
    exports = export_tables(report, "md")
    for name in TABLE_NAMES:
        lines.append(exports[name])
    if report["diagnostics"]:
        lines.append("## Diagnostics\n")
        for d in report["diagnostics"]:
            lines.append(f"- {d['severity']}: {d['path']}: {d['message']}")
        lines.append("")
    return "\n".join(lines)


def build_sweep_report(
    param: str,
    results: list,
    mode: RoundingMode = RoundingMode.HALF_UP,
) -> dict[str, Any]:
    """Sweep results keyed by parameter value, one full appraisal per point."""
    rows = []
    for value, result in results:
        rows.append(
            {
                "value": decimal_string(value),
                "roi_percent": format_roi(result.roi_percent),
                "net_cash_flow": _cell(result.statement.net_cash_flow, mode),
                "npv": round_rupiah(result.npv, mode) if result.npv is not None else None,
                "payback_year": result.payback_year,
            }
        )
    return {"param": param, "results": rows}


def render_sweep(report: dict[str, Any], format: str) -> str:
    if format == "json":
        return render_report_json(report)
    header = ["value", "roi_percent", "net_cash_flow", "npv", "payback_year"]
    body = [
        [
            row["value"],
            row["roi_percent"],
            row["net_cash_flow"]["rounded"],
            "" if row["npv"] is None else row["npv"],
            "" if row["payback_year"] is None else row["payback_year"],
        ]
        for row in report["results"]
    ]
    if format == "csv":
        return _csv_text([header] + body)
    if format in ("md", "markdown"):
        return f"## sweep: {report['param']}\n\n" + _md_table(header, [[str(c) for c in r] for r in body])
    raise ValueError(f"unknown format {format!r}")
