import io

import pytest

from scoresig.errors import DuplicateGroup, NonFiniteScore, ParseError
from scoresig.io import parse_csv, parse_json, parse_scores


def test_single_column():
    assert parse_csv("1\n2\n3\n").groups == {"default": [1.0, 2.0, 3.0]}


def test_header_and_ragged_columns():
    parsed = parse_csv("a,b\n1,3\n2,\n")
    assert parsed.groups == {"a": [1.0, 2.0], "b": [3.0]}
    assert parsed.group("b") == [3.0]


def test_csv_keeps_input_order():
    assert parse_csv("x\n3\n1\n2\n").group() == [3.0, 1.0, 2.0]


def test_csv_errors_carry_location():
    with pytest.raises(ParseError) as info:
        parse_csv("a,b\n1,2\n3,oops\n")
    assert info.value.line == 3 and info.value.column == 2
    assert "line 3" in str(info.value)
    with pytest.raises(DuplicateGroup):
        parse_csv("a,a\n1,2\n")
    with pytest.raises(NonFiniteScore):
        parse_csv("1\ninf\n")
    with pytest.raises(ParseError):
        parse_csv("1,2\n3,4\n")
    with pytest.raises(ParseError):
        parse_csv("\n\n")


def test_json_forms():
    assert parse_json('{"a":[1,2],"b":[3,4]}').groups == {"a": [1.0, 2.0], "b": [3.0, 4.0]}
    assert parse_json("[0.5, 1]").group() == [0.5, 1.0]


def test_json_errors():
    with pytest.raises(DuplicateGroup):
        parse_json('{"a":[1],"a":[2]}')
    with pytest.raises(NonFiniteScore):
        parse_json('{"a":[1, NaN]}')
    with pytest.raises(ParseError):
        parse_json('{"a":[1, "x"]}')
    with pytest.raises(ParseError):
        parse_json('{"a":[]}')
    with pytest.raises(ParseError) as info:
        parse_json('{"a": [1,\n 2')
    assert info.value.line == 2


def test_group_selection_errors():
    parsed = parse_csv("a,b\n1,2\n")
    with pytest.raises(ParseError):
        parsed.group()
    with pytest.raises(ParseError):
        parsed.group("c")


def test_parse_scores_sources(tmp_path):
    path = tmp_path / "s.json"
    path.write_text('{"x": [1, 2]}')
    assert parse_scores(path).source_format == "json"
    assert parse_scores(str(path)).group("x") == [1.0, 2.0]
    assert parse_scores(io.StringIO("[1, 2]")).source_format == "json"
    assert parse_scores(io.StringIO("1\n2\n")).source_format == "csv"
    odd = tmp_path / "scores.txt"
    odd.write_text("4\n5\n")
    assert parse_scores(odd).group() == [4.0, 5.0]
    with pytest.raises(ParseError):
        parse_scores(io.StringIO("1"), format="xml")
