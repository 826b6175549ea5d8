import argparse

from nativeternary.commands.common import (
    Streams,
    add_io_arguments,
    add_scheme_arguments,
    read_text,
    scheme_from_args,
    write_output,
)
from nativeternary.services.codec import TernaryCodec, coalesce
from nativeternary.services.container import ContainerService
from nativeternary.services.dual_starter import DualStarterCodec
from nativeternary.utils.text_utils import parse_dual_symbols, parse_events

NAME = "encode"
HELP = "event text to container"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_scheme_arguments(parser)
    add_io_arguments(parser)
    parser.add_argument(
        "--coalesce",
        action="store_true",
        help="merge adjacent boundaries instead of rejecting them",
    )


def handle(args: argparse.Namespace, streams: Streams) -> None:
    """
    Reads `D<v>`/`B<n>` tokens (or `A<bits>`/`B<bits>` symbols for the
    dual-starter variant) and writes a container.
    """

    config = scheme_from_args(args)
    text = read_text(args, streams)

    if config.is_dual:
        codec = DualStarterCodec.get_instance(config)
        payload = codec.encode(parse_dual_symbols(text))
    else:
        events = parse_events(text)
        if args.coalesce:
            events = coalesce(events)
        payload = TernaryCodec.get_instance(config).encode(events)

    container = ContainerService.get_instance()
    write_output(args, streams, container.write_container(payload, config))
