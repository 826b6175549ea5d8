import argparse

from nativeternary.commands.common import (
    Streams,
    add_io_arguments,
    add_scheme_arguments,
    read_input,
    scheme_from_args,
    write_output,
)
from nativeternary.services.container import ContainerService
from nativeternary.utils.enums import Mapping

NAME = "transcode"
HELP = "binary data to a transcoded container, or back with --to-binary"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_scheme_arguments(parser)
    add_io_arguments(parser)
    parser.add_argument(
        "--to-binary",
        action="store_true",
        help="recover the original bytes from a transcoded container",
    )


def handle(args: argparse.Namespace, streams: Streams) -> None:
    """
    Transcoded trits use the unsigned mapping unless --mapping says otherwise.
    """

    container = ContainerService.get_instance()
    data = read_input(args, streams)

    if args.to_binary:
        write_output(args, streams, container.unwrap_transcoded(data))
        return

    config = scheme_from_args(args, default_mapping=Mapping.UNSIGNED)
    write_output(args, streams, container.wrap_transcoded(data, config))
