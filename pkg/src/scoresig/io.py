"""Reading score files (CSV or JSON)."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO, Union

from .errors import DuplicateGroup, NonFiniteScore, ParseError

DEFAULT_GROUP = "default"


@dataclass(frozen=True)
class ScoreFile:
    """Named groups of raw scores, in file order."""

    groups: dict[str, list[float]]
    source_format: str

    def group(self, name: Optional[str] = None) -> list[float]:
        """Scores of ``name``, or of the only group when ``name`` is omitted."""
        if name is None:
            if len(self.groups) != 1:
                raise ParseError(f"file holds {len(self.groups)} groups ({', '.join(self.groups)}); name one")
            return next(iter(self.groups.values()))
        try:
            return self.groups[name]
        except KeyError:
            raise ParseError(f"no group named {name!r}; found {', '.join(self.groups)}") from None


def _number(text: str, line: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", line=line, column=column) from None
    if not math.isfinite(value):
        raise NonFiniteScore(f"non-finite score {text!r} (line {line}, column {column})")
    return value


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def parse_csv(text: str) -> ScoreFile:
    """One headerless column, or one column per group under a header row.

    Blank cells are skipped, so columns may have different lengths.
    """
    records = [row for row in csv.reader(io.StringIO(text))]
    numbered = [(i, row) for i, row in enumerate(records, start=1) if any(cell.strip() for cell in row)]
    if not numbered:
        raise ParseError("no scores found")

    first_line, first = numbered[0]
    has_header = any(cell.strip() and not _is_number(cell.strip()) for cell in first)
    if has_header:
        names = [cell.strip() for cell in first]
        body = numbered[1:]
        for column, name in enumerate(names, start=1):
            if not name:
                raise ParseError("empty column name in header", line=first_line, column=column)
            if names.index(name) != column - 1:
                raise DuplicateGroup(f"duplicate group {name!r}", line=first_line, column=column)
    else:
        if any(len(row) > 1 and any(c.strip() for c in row[1:]) for _, row in numbered):
            raise ParseError("several columns need a header row naming the groups", line=first_line)
        names = [DEFAULT_GROUP]
        body = numbered

    groups: dict[str, list[float]] = {name: [] for name in names}
    for line, row in body:
        if len(row) > len(names) and any(c.strip() for c in row[len(names):]):
            raise ParseError(f"row has {len(row)} cells but only {len(names)} columns", line=line)
        for column, (name, cell) in enumerate(zip(names, row), start=1):
            if cell.strip():
                groups[name].append(_number(cell.strip(), line, column))
    for name, values in groups.items():
        if not values:
            raise ParseError(f"group {name!r} has no scores")
    return ScoreFile(groups, "csv")


def _no_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise DuplicateGroup(f"duplicate group {key!r}")
        seen[key] = value
    return seen


def _json_scores(name: str, values) -> list[float]:
    if not isinstance(values, list) or not values:
        raise ParseError(f"group {name!r} must be a non-empty array of numbers")
    out = []
    for i, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"group {name!r}, element {i}: not a number: {value!r}")
        if not math.isfinite(value):
            raise NonFiniteScore(f"group {name!r}, element {i}: non-finite score {value!r}")
        out.append(float(value))
    return out


def parse_json(text: str) -> ScoreFile:
    """An object mapping group names to arrays, or a bare array."""
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if isinstance(data, list):
        return ScoreFile({DEFAULT_GROUP: _json_scores(DEFAULT_GROUP, data)}, "json")
    if isinstance(data, dict) and data:
        return ScoreFile({name: _json_scores(name, values) for name, values in data.items()}, "json")
    raise ParseError("expected an object of score arrays or a single array")


def parse_scores(source: Union[str, Path, TextIO], format: Optional[str] = None) -> ScoreFile:
    """Read scores from a path, ``"-"`` (stdin) or an open text stream.

    ``format`` is ``"csv"`` or ``"json"``; when omitted it is taken from the
    file extension, falling back to sniffing the first character.
    """
    if hasattr(source, "read"):
        text = source.read()
        name = getattr(source, "name", "")
    elif str(source) == "-":
        text = sys.stdin.read()
        name = ""
    else:
        path = Path(source)
        text = path.read_text()
        name = path.name
    if format is None:
        suffix = Path(str(name)).suffix.lower()
        if suffix in (".csv", ".json"):
            format = suffix[1:]
        else:
            format = "json" if text.lstrip()[:1] in ("[", "{") else "csv"
    if format == "csv":
        return parse_csv(text)
    if format == "json":
        return parse_json(text)
    raise ParseError(f"unknown score format {format!r}")
