import math
import re
from typing import Iterable, Sequence

from nativeternary.exceptions.codec_exceptions import EventTextParseException
from nativeternary.utils.dataclasses_utils import DualSymbol, Event
from nativeternary.utils.enums import Mapping, Namespace

DATA_TOKEN = re.compile(r"D([+-]?\d+)")
BOUNDARY_TOKEN = re.compile(r"B(\d+)")
DUAL_TOKEN = re.compile(r"([AB])([01]*)")

SIZE_UNITS = ((1e9, "GB"), (1e6, "MB"), (1e3, "KB"))


def parse_events(text: str) -> list[Event]:
    """
    Parses whitespace-separated event tokens: `D<v>` for data and `B<n>` for a
    boundary of level n.

    Values are not checked against a mapping here; the encoder does that.

    Raises:
        EventTextParseException: On a malformed token.
    """

    events = []
    for token in text.split():
        if match := DATA_TOKEN.fullmatch(token):
            events.append(Event.data(int(match.group(1))))
        elif match := BOUNDARY_TOKEN.fullmatch(token):
            events.append(Event.boundary(int(match.group(1))))
        else:
            raise EventTextParseException(token, "expected D<value> or B<level>")
    return events


def format_event(event: Event, mapping: Mapping = Mapping.BALANCED) -> str:
    if event.is_boundary:
        return f"B{event.level}"
    if mapping is Mapping.BALANCED and event.trit:
        return f"D{event.trit:+d}"
    return f"D{event.trit}"


def format_events(events: Iterable[Event], mapping: Mapping = Mapping.BALANCED) -> str:
    return " ".join(format_event(event, mapping) for event in events)


def parse_dual_symbols(text: str) -> list[DualSymbol]:
    """
    Parses dual-starter symbols written as a namespace letter followed by the
    payload bits, e.g. `A01 B`.

    Raises:
        EventTextParseException: On a malformed token.
    """

    symbols = []
    for token in text.split():
        match = DUAL_TOKEN.fullmatch(token)
        if not match:
            raise EventTextParseException(token, "expected A<bits> or B<bits>")
        symbols.append(DualSymbol.from_text(Namespace(match.group(1)), match.group(2)))
    return symbols


def format_dual_symbols(symbols: Iterable[DualSymbol]) -> str:
    return " ".join(f"{symbol.namespace.value}{symbol.bit_text}" for symbol in symbols)


def round_significant(value: float, digits: int = 3, ceil: bool = True) -> float:
    """
    Rounds to a number of significant figures, upward by default.
    """

    if value == 0:
        return 0.0

    exponent = math.floor(math.log10(abs(value))) - digits + 1
    scale = 10.0**exponent
    scaled = round(value / scale, 9)
    return (math.ceil(scaled) if ceil else round(scaled)) * scale


def format_size(
    byte_count: float, unit: str | None = None, ceil: bool = True
) -> str:
    """
    Decimal size with three significant figures, e.g. 328125 -> "329 KB".

    Args:
        byte_count: Size in bytes.
        unit: Force "KB", "MB" or "GB"; picked from the magnitude otherwise.
        ceil: Round upward rather than to nearest.
    """

    units = dict((name, factor) for factor, name in SIZE_UNITS)
    if unit is None:
        unit = next(
            (name for factor, name in SIZE_UNITS if byte_count >= factor), "bytes"
        )

    if unit == "bytes":
        return f"{byte_count:,.0f} bytes"

    value = round_significant(byte_count / units[unit], ceil=ceil)
    text = f"{value:,.0f}" if value >= 100 else f"{value:.3g}"
    return f"{text} {unit}"


def format_report(fields: dict[str, object]) -> str:
    """
    Renders `key: value` lines with the values aligned.
    """

    if not fields:
        return ""

    width = max(len(key) for key in fields)
    return "\n".join(f"{key + ':':<{width + 1}} {value}" for key, value in fields.items())


def format_table(
    headers: Sequence[str], rows: Iterable[Sequence[object]], title: str | None = None
) -> str:
    """
    Renders rows as left-aligned columns under a header and a rule.
    """

    cells = [list(map(str, headers))] + [list(map(str, row)) for row in rows]
    widths = [max(len(row[column]) for row in cells) for column in range(len(headers))]

    def render(row: list[str]) -> str:
        return "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()

    lines = [title] if title else []
    lines.append(render(cells[0]))
    lines.append("  ".join("-" * width for width in widths))
    lines.extend(render(row) for row in cells[1:])
    return "\n".join(lines)
