import pytest

from nativeternary.exceptions.codec_exceptions import EventTextParseException
from nativeternary.utils.dataclasses_utils import DualSymbol, Event
from nativeternary.utils.enums import Mapping
from nativeternary.utils.text_utils import (
    format_dual_symbols,
    format_events,
    format_report,
    format_table,
    parse_dual_symbols,
    parse_events,
)


def test_parse_events(table_events: list[Event]):
    assert parse_events(" D-1\tD0\nD+1  B2 ") == table_events


def test_format_events(table_events: list[Event]):
    assert format_events(table_events) == "D-1 D0 D+1 B2"
    assert format_events([Event.data(2), Event.boundary(1)], Mapping.UNSIGNED) == "D2 B1"


@pytest.mark.parametrize("text", ["D", "B-1", "X1", "D1.5", "b2"])
def test_parse_events_rejects(text: str):
    with pytest.raises(EventTextParseException):
        parse_events(text)


def test_dual_symbols():
    symbols = parse_dual_symbols("A01 B")

    assert symbols == [DualSymbol.from_text("A", "01"), DualSymbol.from_text("B")]
    assert format_dual_symbols(symbols) == "A01 B"


def test_dual_symbols_reject():
    with pytest.raises(EventTextParseException):
        parse_dual_symbols("A012")


def test_format_report():
    assert format_report({"a": 1, "longer": "x"}) == "a:      1\nlonger: x"
    assert format_report({}) == ""


def test_format_table():
    table = format_table(("Name", "N"), [("x", 10)], title="T")

    assert table.splitlines() == ["T", "Name  N", "----  --", "x     10"]
