import argparse
from pathlib import Path

import numpy as np

from nativeternary.commands.common import (
    Streams,
    add_io_arguments,
    read_input,
    write_output,
)
from nativeternary.services.container import ModelPacker, serialize_manifest

NAME = "unpack"
HELP = "model container to manifest and raw weights"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_io_arguments(parser)
    parser.add_argument("--manifest", type=Path, help="where to write the manifest")
    parser.add_argument(
        "--weights",
        type=Path,
        help="where to write the weights, one signed byte each (default --out)",
    )


def handle(args: argparse.Namespace, streams: Streams) -> None:
    manifest, weights = ModelPacker.unpack_model(read_input(args, streams))

    if args.manifest is not None:
        args.manifest.write_bytes(serialize_manifest(manifest))

    data = weights.astype(np.int8).tobytes()
    write_output(args, streams, data, path=args.weights)
