import argparse
from pathlib import Path

from nativeternary.commands.common import Streams, add_seed_argument, write_text
from nativeternary.services.analytics import AnalyticsService
from nativeternary.utils.text_utils import format_report

NAME = "bench"
HELP = "encode/decode throughput on random trits"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scale",
        type=int,
        action="append",
        help="weights per run; repeat for several scales (default 1000000)",
    )
    add_seed_argument(parser)
    parser.add_argument(
        "--out", dest="output", type=Path, help="output file (default stdout)"
    )


def handle(args: argparse.Namespace, streams: Streams) -> None:
    analytics = AnalyticsService.get_instance()
    results = [
        analytics.throughput_bench(scale, args.seed)
        for scale in args.scale or [1_000_000]
    ]

    sections = [analytics.render_throughput_table(results)]
    for result in results:
        sections.append(
            format_report(
                {
                    "scale": result.scale,
                    "encoded_bytes": result.encoded_bytes,
                    "encode_seconds": f"{result.encode_seconds:.6f}",
                    "decode_seconds": f"{result.decode_seconds:.6f}",
                }
            )
        )
    write_text(args, streams, "\n\n".join(sections))
