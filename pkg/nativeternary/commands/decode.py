import argparse

from nativeternary.commands.common import (
    Streams,
    add_io_arguments,
    read_input,
    write_text,
)
from nativeternary.services.codec import TernaryCodec
from nativeternary.services.container import ContainerService
from nativeternary.services.dual_starter import DualStarterCodec
from nativeternary.utils.text_utils import format_dual_symbols, format_events

NAME = "decode"
HELP = "container to event text"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_io_arguments(parser)


def handle(args: argparse.Namespace, streams: Streams) -> None:
    contents = ContainerService.get_instance().read(read_input(args, streams))
    config = contents.config

    if config.is_dual:
        symbols, _ = DualStarterCodec.get_instance(config).decode(contents.payload)
        write_text(args, streams, format_dual_symbols(symbols))
        return

    events = TernaryCodec.get_instance(config).decode(contents.payload)
    write_text(args, streams, format_events(events, config.mapping))
