import argparse
from pathlib import Path

from nativeternary.commands.common import (
    Streams,
    add_scheme_arguments,
    add_seed_argument,
    scheme_from_args,
    write_text,
)
from nativeternary.data.model_shapes import get_bitnet_manifest
from nativeternary.schemas import TextShapeParams
from nativeternary.services.analytics import AnalyticsService
from nativeternary.services.channel import ChannelSimulator
from nativeternary.utils.enums import Variant
from nativeternary.utils.text_utils import format_report, format_table

NAME = "analyze"
HELP = "density, amortisation, storage and robustness figures"

TOPICS = (
    "density",
    "amortisation",
    "storage",
    "tables",
    "transcode",
    "vulnerability",
    "census",
    "crosscheck",
    "fuzz",
)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("topic", choices=TOPICS)
    add_scheme_arguments(parser)
    add_seed_argument(parser)

    text = parser.add_argument_group("amortisation")
    text.add_argument("--chars-per-word", type=float, default=5.0)
    text.add_argument("--words-per-sentence", type=float, default=20.0)
    text.add_argument("--sentences-per-paragraph", type=float, default=8.0)
    text.add_argument(
        "--levels",
        type=int,
        nargs=3,
        default=[1, 2, 3],
        metavar=("WORD", "SENTENCE", "PARAGRAPH"),
        help="boundary levels of word, sentence and paragraph ends",
    )

    model = parser.add_argument_group("storage, crosscheck")
    model.add_argument("--weights", type=int, default=1_000_000)
    model.add_argument("--tensors", type=int, default=1)
    model.add_argument("--layers", type=int, default=1)
    model.add_argument("--elements-per-tensor", type=int, default=1)

    robustness = parser.add_argument_group("vulnerability, fuzz")
    robustness.add_argument("--trials", type=int, default=10)
    robustness.add_argument("--flips", type=int, default=100_000)
    robustness.add_argument("--buffers", type=int, default=10_000)

    parser.add_argument(
        "--out", dest="output", type=Path, help="output file (default stdout)"
    )


def handle(args: argparse.Namespace, streams: Streams) -> None:
    analytics = AnalyticsService.get_instance()
    write_text(args, streams, TOPIC_HANDLERS[args.topic](analytics, args))


def _density(analytics: AnalyticsService, _args: argparse.Namespace) -> str:
    single = analytics.data_density(Variant.SINGLE)
    dual = analytics.data_density(Variant.DUAL)
    return format_report(
        {
            "single_delimiter_bits_per_bit": f"{single:.10f}",
            "dual_starter_bits_per_bit": f"{dual:.10f}",
            "single_over_dual": f"{single / dual:.10f}",
        }
    )


def _amortisation(analytics: AnalyticsService, args: argparse.Namespace) -> str:
    word, sentence, paragraph = args.levels
    params = TextShapeParams(
        chars_per_word=args.chars_per_word,
        words_per_sentence=args.words_per_sentence,
        sentences_per_paragraph=args.sentences_per_paragraph,
        word_level=word,
        sentence_level=sentence,
        paragraph_level=paragraph,
    )
    return format_report(
        {"delimiter_bits_per_char": f"{analytics.amortised_overhead(params):.6f}"}
    )


def _storage(analytics: AnalyticsService, args: argparse.Namespace) -> str:
    estimates = analytics.storage_comparison(args.weights, args.tensors, args.layers)
    rows = [
        (
            estimate.name,
            f"{estimate.bits_per_weight:.3f}",
            f"{estimate.payload_bytes:,.2f}",
            f"{estimate.header_bytes:,.2f}",
            f"{estimate.total_bytes:,.2f}",
            f"{estimate.size_ratio:.4f}",
            "-" if estimate.overhead_ratio is None else f"{estimate.overhead_ratio:.1f}",
        )
        for estimate in estimates
    ]
    return format_table(
        (
            "Format",
            "Bits/weight",
            "Payload bytes",
            "Header bytes",
            "Total bytes",
            "NT/format",
            "Header/NT",
        ),
        rows,
        title=(
            f"{args.weights:,} weights, {args.tensors} tensors, {args.layers} layers"
        ),
    )


def _tables(analytics: AnalyticsService, _args: argparse.Namespace) -> str:
    return "\n\n".join(
        [
            analytics.render_bits_per_weight_table(),
            analytics.render_size_table(),
            analytics.render_boundary_table(),
        ]
    )


def _transcode(analytics: AnalyticsService, _args: argparse.Namespace) -> str:
    return format_report(
        {
            key: f"{value:.6f}" if isinstance(value, float) else value
            for key, value in analytics.transcode_density().items()
        }
    )


def _vulnerability(_analytics: AnalyticsService, args: argparse.Namespace) -> str:
    simulator = ChannelSimulator.get_instance(scheme_from_args(args))
    estimate = simulator.vulnerability_rate(args.trials, args.flips, args.seed)
    return format_report(
        {
            "scheme": simulator.config.describe(),
            "samples": estimate.samples,
            "false_boundaries": estimate.false_boundaries,
            "rate": "-" if estimate.rate is None else f"{estimate.rate:.6f}",
            "expected": f"{1 / 3:.6f}",
        }
    )


def _census(_analytics: AnalyticsService, args: argparse.Namespace) -> str:
    simulator = ChannelSimulator.get_instance(scheme_from_args(args))
    rows = [
        (pair.label, "high" if bit == 0 else "low", flipped.label, "yes" if hit else "")
        for pair, bit, flipped, hit in simulator.distance_one_census()
    ]
    return format_table(
        ("Data pair", "Bit", "Becomes", "Delimiter"),
        rows,
        title=f"Single bit flips ({simulator.config.describe()})",
    )


def _crosscheck(analytics: AnalyticsService, args: argparse.Namespace) -> str:
    manifest = get_bitnet_manifest(args.layers, args.elements_per_tensor)
    return format_report(analytics.cross_check(manifest, args.seed))


def _fuzz(analytics: AnalyticsService, args: argparse.Namespace) -> str:
    return format_report(analytics.fuzz_decoder(args.buffers, args.seed).model_dump())


TOPIC_HANDLERS = {
    "density": _density,
    "amortisation": _amortisation,
    "storage": _storage,
    "tables": _tables,
    "transcode": _transcode,
    "vulnerability": _vulnerability,
    "census": _census,
    "crosscheck": _crosscheck,
    "fuzz": _fuzz,
}
