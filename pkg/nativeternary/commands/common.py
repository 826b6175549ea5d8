import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Optional

from nativeternary.config import settings
from nativeternary.exceptions.codec_exceptions import (
    EventTextParseException,
    SchemeConflictException,
)
from nativeternary.schemas import SchemeConfig
from nativeternary.utils.enums import BitPair, Mapping, Variant


@dataclass(frozen=True, slots=True)
class Streams:
    stdin: BinaryIO
    stdout: BinaryIO
    stderr: BinaryIO


def add_scheme_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("scheme")
    group.add_argument(
        "--delimiter",
        choices=[pair.label for pair in BitPair.get_list()],
        help="delimiter bit-pair (default 11)",
    )
    group.add_argument(
        "--mapping",
        choices=Mapping.get_values(),
        help="trit mapping (default balanced)",
    )
    group.add_argument(
        "--variant",
        choices=Variant.get_values(),
        help="single delimiter or dual starter (default single)",
    )


def add_io_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--in", dest="input", type=Path, help="input file (default stdin)"
    )
    parser.add_argument(
        "--out", dest="output", type=Path, help="output file (default stdout)"
    )


def add_seed_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=settings.default_seed,
        help=f"generator seed (default {settings.default_seed})",
    )


def scheme_from_args(
    args: argparse.Namespace, default_mapping: Mapping = Mapping.BALANCED
) -> SchemeConfig:
    """
    Builds the scheme selected on the command line.

    Raises:
        SchemeConflictException: If the dual-starter variant is combined with
            an explicit delimiter or mapping.
    """

    variant = Variant(args.variant or Variant.SINGLE.value)
    if variant is Variant.DUAL:
        given = [flag for flag in ("delimiter", "mapping") if getattr(args, flag)]
        if given:
            raise SchemeConflictException(
                f"--variant dual takes no --{' or --'.join(given)}"
            )
        return SchemeConfig(variant=Variant.DUAL)

    return SchemeConfig.from_options(
        delimiter=args.delimiter or BitPair.P11.label,
        mapping=args.mapping or default_mapping.value,
    )


def read_input(args: argparse.Namespace, streams: Streams) -> bytes:
    if args.input is not None:
        return args.input.read_bytes()
    return streams.stdin.read()


def read_text(args: argparse.Namespace, streams: Streams) -> str:
    data = read_input(args, streams)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise EventTextParseException(
            repr(data[e.start : e.end]), "input is not UTF-8 text"
        ) from e


def write_output(
    args: argparse.Namespace, streams: Streams, data: bytes, path: Optional[Path] = None
) -> None:
    target = path if path is not None else args.output
    if target is not None:
        target.write_bytes(data)
    else:
        streams.stdout.write(data)


def write_text(args: argparse.Namespace, streams: Streams, text: str) -> None:
    write_output(args, streams, f"{text}\n".encode("utf-8"))
