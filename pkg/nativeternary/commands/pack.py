import argparse
from pathlib import Path

import numpy as np

from nativeternary.commands.common import (
    Streams,
    add_scheme_arguments,
    add_seed_argument,
    scheme_from_args,
    write_output,
)
from nativeternary.data.model_shapes import get_bitnet_manifest
from nativeternary.logger import get_logger
from nativeternary.services.container import ModelPacker, parse_manifest

logger = get_logger(__name__)

NAME = "pack"
HELP = "manifest and raw weights to a model container"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_scheme_arguments(parser)
    parser.add_argument(
        "--manifest",
        type=Path,
        help="JSON manifest (default: synthetic BitNet-style layout)",
    )
    parser.add_argument(
        "--layers",
        type=int,
        default=24,
        help="blocks in the synthetic layout (default 24)",
    )
    parser.add_argument(
        "--elements-per-tensor",
        type=int,
        default=1,
        help="weights per tensor in the synthetic layout (default 1)",
    )
    parser.add_argument(
        "--weights",
        type=Path,
        help="one signed byte per weight (default: random trits from --seed)",
    )
    add_seed_argument(parser)
    parser.add_argument(
        "--out", dest="output", type=Path, help="output file (default stdout)"
    )


def handle(args: argparse.Namespace, streams: Streams) -> None:
    config = scheme_from_args(args)

    if args.manifest is not None:
        manifest = parse_manifest(args.manifest.read_bytes())
    else:
        manifest = get_bitnet_manifest(args.layers, args.elements_per_tensor)

    if args.weights is not None:
        weights = np.frombuffer(args.weights.read_bytes(), dtype=np.int8)
    else:
        offset = config.mapping.offset
        rng = np.random.default_rng(args.seed)
        weights = rng.integers(offset, offset + 3, size=manifest.weight_count)
        logger.debug("generated %d random weights", len(weights))

    packer = ModelPacker.get_instance(config)
    write_output(args, streams, packer.pack_model(manifest, weights))
