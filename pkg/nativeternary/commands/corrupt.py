import argparse
from pathlib import Path

from nativeternary.commands.common import (
    Streams,
    add_io_arguments,
    add_seed_argument,
    read_input,
    write_output,
)
from nativeternary.exceptions.cli_exceptions import UsageException
from nativeternary.services.channel import corrupt_container
from nativeternary.utils.dataclasses_utils import CorruptionSpec
from nativeternary.utils.text_utils import format_report

NAME = "corrupt"
HELP = "flip payload bits of a container and report the damage"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_io_arguments(parser)
    parser.add_argument(
        "--flips", type=int, default=1, help="random bit flips (default 1)"
    )
    parser.add_argument(
        "--positions",
        help="comma-separated payload bit positions to flip instead of random ones",
    )
    add_seed_argument(parser)
    parser.add_argument(
        "--report", type=Path, help="report file (default stderr)"
    )


def parse_positions(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError as e:
        raise UsageException(f"--positions takes integers, got {text!r}") from e


def handle(args: argparse.Namespace, streams: Streams) -> None:
    if args.positions is not None:
        spec = CorruptionSpec.at(*parse_positions(args.positions))
    else:
        spec = CorruptionSpec.random(args.flips, args.seed)

    corrupted, report = corrupt_container(read_input(args, streams), spec)
    write_output(args, streams, corrupted)

    text = format_report(report.model_dump()) + "\n"
    if args.report is not None:
        args.report.write_text(text, encoding="utf-8")
    else:
        streams.stderr.write(text.encode("utf-8"))
