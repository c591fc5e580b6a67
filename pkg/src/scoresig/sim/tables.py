"""Serialisation of error-rate tables (CSV, LaTeX, JSON) and plot data."""

from __future__ import annotations

import csv
import io
import json

from ..errors import ParseError
from .experiments import TEST_NAMES, TESTS, ErrorRateRow, ErrorRateTable

X_HEADERS = {"size": "Sample Size", "mean_difference": "Difference"}

TABLE_JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ErrorRateTable",
    "type": "object",
    "required": ["error_kind", "x_label", "tests", "num_simulations", "rows", "config"],
    "properties": {
        "error_kind": {"enum": ["type1", "type2"]},
        "x_label": {"enum": ["size", "mean_difference"]},
        "tests": {"type": "array", "items": {"enum": list(TESTS)}},
        "num_simulations": {
            "type": "object",
            "additionalProperties": {"type": "integer", "minimum": 1},
        },
        "rows": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["x", "threshold", "test", "rate"],
                "additionalProperties": False,
                "properties": {
                    "x": {"type": "number"},
                    "threshold": {"type": "number"},
                    "test": {"enum": list(TESTS)},
                    "rate": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        },
        "config": {"type": "object"},
    },
}


def _tests_in(table: ErrorRateTable) -> list[str]:
    present = {row.test for row in table.rows}
    return [t for t in TESTS if t in present]


def _grid(table: ErrorRateTable):
    """Rows as ``(x, threshold) -> {test: rate}`` in first-seen order."""
    grid: dict[tuple[float, float], dict[str, float]] = {}
    for row in table.rows:
        grid.setdefault((row.x, row.threshold), {})[row.test] = row.rate
    return grid


def _number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def table_to_csv(table: ErrorRateTable) -> str:
    tests = _tests_in(table)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([table.x_label, "threshold", *tests])
    for (x, threshold), rates in _grid(table).items():
        writer.writerow([_number(x), repr(float(threshold)), *(repr(float(rates[t])) for t in tests)])
    return out.getvalue()


def read_table_csv(text: str) -> list[ErrorRateRow]:
    """Parse the output of :func:`table_to_csv` back into rows."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty table") from None
    tests = header[2:]
    unknown = [t for t in tests if t not in TESTS]
    if len(header) < 3 or unknown:
        raise ParseError(f"unrecognised table header {header}", line=1)
    rows = []
    for line, record in enumerate(reader, start=2):
        if len(record) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(record)}", line=line)
        try:
            numbers = [float(v) for v in record]
        except ValueError as exc:
            raise ParseError(str(exc), line=line) from None
        x, threshold = numbers[:2]
        x = int(x) if x.is_integer() and header[0] == "size" else x
        rows.extend(ErrorRateRow(x, threshold, test, rate) for test, rate in zip(tests, numbers[2:]))
    return rows


def _short(value: float, digits: int) -> str:
    # 0.050 -> 0.05, 1.000 -> 1.0, as in hand-written tables
    text = f"{value:.{digits}f}".rstrip("0")
    return text + "0" if text.endswith(".") else text


def table_to_latex(table: ErrorRateTable, digits: int = 3) -> str:
    """Booktabs table with one block of threshold rows per x value."""
    tests = _tests_in(table)
    lines = [
        r"\begin{tabular}{ll" + "r" * len(tests) + "}",
        r"\toprule",
        " & ".join([X_HEADERS[table.x_label], "Threshold", *(TEST_NAMES[t] for t in tests)]) + r" \\",
        r"\midrule",
    ]
    previous = None
    for (x, threshold), rates in _grid(table).items():
        if previous is not None and x != previous:
            lines.append(r"\midrule")
        label = _number(x) if x != previous else ""
        cells = [_short(rates[t], digits) for t in tests]
        lines.append(" & ".join([label, f"{threshold:.2f}", *cells]) + r" \\")
        previous = x
    lines += [r"\bottomrule", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def table_to_dict(table: ErrorRateTable) -> dict:
    return {
        "error_kind": table.error_kind,
        "x_label": table.x_label,
        "tests": _tests_in(table),
        "num_simulations": dict(table.num_simulations),
        "rows": [{"x": r.x, "threshold": r.threshold, "test": r.test, "rate": r.rate} for r in table.rows],
        "config": table.config.to_dict(),
    }


def emit_table(table: ErrorRateTable, format: str = "csv") -> str:
    """Render ``table`` as ``csv``, ``latex`` or ``json`` text."""
    if not table.rows:
        raise ValueError("cannot emit an empty table")
    if format == "csv":
        return table_to_csv(table)
    if format == "latex":
        return table_to_latex(table)
    if format == "json":
        return json.dumps(table_to_dict(table), indent=2) + "\n"
    raise ValueError(f"unknown table format {format!r}")


def emit_plot_data(table: ErrorRateTable, threshold: float, aso_threshold: float | None = None) -> str:
    """CSV with columns ``x,test,rate`` for one curve per test.

    P-value tests are read at ``threshold`` and ASO at ``aso_threshold``
    (default: the same), which is how the sample-size figures pair
    ``alpha = 0.05`` with ``tau = 0.2``.
    """
    aso_threshold = threshold if aso_threshold is None else aso_threshold
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "test", "rate"])
    for row in table.rows:
        wanted = aso_threshold if row.test == "aso" else threshold
        if row.threshold == wanted:
            writer.writerow([_number(row.x), row.test, repr(float(row.rate))])
    return out.getvalue()


def emit_statistics(table: ErrorRateTable) -> str:
    """Raw per-simulation statistics (p-values or ``eps_min``) as CSV."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "test", "simulation", "statistic"])
    for (x, test), values in table.statistics.items():
        for i, value in enumerate(values):
            writer.writerow([_number(x), test, i, repr(float(value))])
    return out.getvalue()
