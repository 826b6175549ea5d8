import math
import time
from typing import Iterable, Optional

import numpy as np

from nativeternary.config import Settings, settings
from nativeternary.data.model_shapes import get_bitnet_manifest
from nativeternary.data.storage_models import (
    GGUF_INT8,
    GGUF_Q2_K,
    GGUF_Q4_0,
    MODEL_SCALES,
    NATIVETERNARY,
    REFERENCE_BOUNDARY_RATIO,
    REFERENCE_MODEL_WEIGHTS,
    STORAGE_NOTES,
    get_storage_models,
)
from nativeternary.exceptions.base_codec_exception import (
    BaseCodecException,
    InvalidArgumentException,
)
from nativeternary.logger import get_logger
from nativeternary.schemas import (
    BenchResult,
    FuzzSummary,
    ModelManifest,
    SchemeConfig,
    StorageEstimate,
    StorageModel,
    TextShapeParams,
    TritBlockCodecParams,
)
from nativeternary.services.base import BaseService
from nativeternary.services.codec import TernaryCodec
from nativeternary.services.container import (
    HEADER_SIZE,
    MAGIC,
    MANIFEST_LENGTH,
    VERSION,
    ContainerService,
    ModelPacker,
    boundary_overhead,
    serialize_manifest,
)
from nativeternary.services.transcode import IDEAL_EXPANSION, TritBlockTranscoder
from nativeternary.utils.dataclasses_utils import PairBuffer
from nativeternary.utils.enums import Variant
from nativeternary.utils.text_utils import format_size, format_table

logger = get_logger(__name__)

SINGLE_DENSITY = math.log2(3) / 2
DUAL_DENSITY = 0.5


class AnalyticsService(BaseService):
    """Size, overhead and throughput arithmetic for the encoding."""

    def data_density(self, variant: Variant) -> float:
        """
        Information bits carried per transmitted bit.

        Args:
            variant: The encoding variant.

        Returns:
            float: log2(3) / 2 for the single-delimiter scheme, 0.5 for the
                dual-starter one.
        """

        if variant is Variant.DUAL:
            return DUAL_DENSITY
        return SINGLE_DENSITY

    def amortised_overhead(self, params: TextShapeParams = TextShapeParams()) -> float:
        """
        Delimiter bits per character of text whose words, sentences and
        paragraphs end in boundaries of the given levels.

        Each level-L boundary costs 2L bits and occurs once per unit, so the
        cost of each unit is spread over the characters it spans.
        """

        word = params.chars_per_word
        sentence = word * params.words_per_sentence
        paragraph = sentence * params.sentences_per_paragraph

        return (
            2 * params.word_level / word
            + 2 * params.sentence_level / sentence
            + 2 * params.paragraph_level / paragraph
        )

    def storage_comparison(
        self,
        weight_count: int,
        tensor_count: int,
        layer_count: int = 0,
        models: Optional[list[StorageModel]] = None,
    ) -> list[StorageEstimate]:
        """
        Estimates the stored size of a model under each storage format.

        NativeTernary's structural cost is its boundary runs, 2 bits per layer
        plus 4 per tensor; the other formats pay a fixed header per tensor.
        Ratios are taken against the NativeTernary row, or the first row if
        the list has none.

        Args:
            weight_count: Number of ternary weights.
            tensor_count: Number of tensors.
            layer_count: Number of layers; 0 leaves the 2 bits per layer out.
            models: Formats to compare; the configured table by default.

        Returns:
            list[StorageEstimate]: One estimate per model, in input order.

        Raises:
            InvalidArgumentException: If a count is negative.
        """

        if min(weight_count, tensor_count, layer_count) < 0:
            raise InvalidArgumentException("Model counts must be non-negative.")

        models = models if models is not None else get_storage_models(self.settings)
        boundary_bytes = (2 * layer_count + 4 * tensor_count) / 8

        sizes = []
        for model in models:
            payload = weight_count * model.bits_per_weight / 8
            if model.name == NATIVETERNARY:
                header = boundary_bytes
            else:
                header = tensor_count * model.per_tensor_header_bytes
            sizes.append((model, payload, header))

        if not sizes:
            return []

        _, reference_payload, reference_header = next(
            (size for size in sizes if size[0].name == NATIVETERNARY), sizes[0]
        )
        reference_total = reference_payload + reference_header

        estimates = []
        for model, payload, header in sizes:
            total = payload + header
            estimates.append(
                StorageEstimate(
                    name=model.name,
                    bits_per_weight=model.bits_per_weight,
                    payload_bytes=payload,
                    header_bytes=header,
                    total_bytes=total,
                    size_ratio=reference_total / total if total else 1.0,
                    overhead_ratio=(
                        header / reference_header if reference_header else None
                    ),
                )
            )
        return estimates

    def throughput_bench(self, scale: int, seed: int) -> BenchResult:
        """
        Times encoding and decoding of uniform random trits.

        Data is encoded and decoded in chunks of pair_chunk_size pairs, the
        decode through a streaming session. Warm-up passes are discarded and
        the fastest of the timed repeats is reported.

        Args:
            scale: Number of trits (weights).
            seed: Seed of the generated data.

        Returns:
            BenchResult: Timings and derived MB/s, one byte per weight.

        Raises:
            InvalidArgumentException: If scale is below 1.
        """

        if scale < 1:
            raise InvalidArgumentException(f"Benchmark scale must be >= 1, got {scale}.")

        codec = TernaryCodec(SchemeConfig(), self.settings)
        chunk = self.settings.pair_chunk_size
        trits = np.random.default_rng(seed).integers(-1, 2, size=scale, dtype=np.int8)

        def encode() -> bytes:
            return b"".join(
                codec.encode_trits(trits[start : start + chunk]).payload
                for start in range(0, scale, chunk)
            )

        def decode(data: bytes) -> int:
            session = codec.session()
            events = 0
            for start in range(0, scale, chunk):
                count = min(chunk, scale - start)
                piece = data[start // 4 : (start + count + 3) // 4]
                events += len(session.feed(PairBuffer(piece, count)))
            return events + len(session.close())

        for _ in range(self.settings.bench_warmup_iterations):
            decode(encode())

        encode_seconds = decode_seconds = math.inf
        encoded = b""
        for _ in range(max(self.settings.bench_repeats, 1)):
            started = time.perf_counter()
            encoded = encode()
            encode_seconds = min(encode_seconds, time.perf_counter() - started)

            started = time.perf_counter()
            decode(encoded)
            decode_seconds = min(decode_seconds, time.perf_counter() - started)

        result = BenchResult(
            scale=scale,
            seed=seed,
            encoded_bytes=len(encoded),
            encode_seconds=encode_seconds,
            decode_seconds=decode_seconds,
        )
        logger.info(
            "bench scale=%d encode=%.1f MB/s decode=%.1f MB/s",
            scale,
            result.encode_mbps,
            result.decode_mbps,
        )
        return result

    def transcode_density(self, block_bytes: Optional[int] = None) -> dict[str, float]:
        """
        Compares the block transcoder's expansion with the ideal 2 / log2(3).
        """

        transcoder = TritBlockTranscoder(app_settings=self.settings)
        if block_bytes is not None and block_bytes != transcoder.block_bytes:
            transcoder = TritBlockTranscoder(
                TritBlockCodecParams(block_bytes=block_bytes), self.settings
            )

        expansion = transcoder.expansion_factor()
        return {
            "block_bytes": transcoder.block_bytes,
            "trits_per_block": transcoder.params.trits_per_block,
            "expansion_factor": expansion,
            "ideal_expansion": IDEAL_EXPANSION,
            "excess_over_ideal": expansion / IDEAL_EXPANSION - 1,
            "data_density": SINGLE_DENSITY,
        }

    def cross_check(
        self, manifest: ModelManifest, seed: int = 0
    ) -> dict[str, int | float]:
        """
        Packs random weights into a real container and compares its payload
        with the analytic NativeTernary size.

        Returns:
            dict: Analytic payload bytes, measured payload bytes and the
                container's fixed overhead.
        """

        weights = np.random.default_rng(seed).integers(
            -1, 2, size=manifest.weight_count
        )
        file = ModelPacker(app_settings=self.settings).pack_model(manifest, weights)
        fixed = HEADER_SIZE + MANIFEST_LENGTH.size + len(serialize_manifest(manifest))

        estimate = self.storage_comparison(
            manifest.weight_count,
            manifest.tensor_count,
            manifest.layer_count,
            [StorageModel(name=NATIVETERNARY, bits_per_weight=2.0)],
        )[0]

        return {
            "analytic_payload_bytes": estimate.total_bytes,
            "measured_payload_bytes": len(file) - fixed,
            "container_overhead_bytes": fixed,
            "file_bytes": len(file),
        }

    def fuzz_decoder(
        self,
        buffers: int,
        seed: int,
        max_bytes: int = 64,
        read_containers: bool = True,
    ) -> FuzzSummary:
        """
        Feeds random buffers with random valid pair counts to the decoder,
        and the same bytes to the container reader.

        The decoder must accept every buffer; the reader may only reject with
        a codec exception. Any other exception propagates to the caller.
        decode_seconds covers the decoder calls only.

        Args:
            buffers: Number of random buffers.
            seed: Generator seed.
            max_bytes: Largest buffer size.
            read_containers: Whether to also feed each buffer to the reader.

        Returns:
            FuzzSummary: Totals over every buffer.
        """

        if buffers < 0 or max_bytes < 0:
            raise InvalidArgumentException("fuzz_decoder needs non-negative sizes.")

        rng = np.random.default_rng(seed)
        codecs = [
            TernaryCodec(SchemeConfig.from_options(delimiter=label), self.settings)
            for label in ("00", "01", "10", "11")
        ]
        container = ContainerService(self.settings)
        lengths = rng.integers(0, max_bytes + 1, size=buffers)
        pair_counts = rng.integers(0, 4 * lengths + 1).tolist()
        pool = rng.integers(0, 256, size=int(lengths.sum()), dtype=np.uint8).tobytes()

        pairs = events = boundaries = rejected = accepted = 0
        decode_seconds = 0.0
        offset = 0
        for index, length in enumerate(lengths.tolist()):
            data = pool[offset : offset + length]
            offset += length

            pair_count = pair_counts[index]
            started = time.perf_counter()
            decoded = codecs[index % 4].decode_arrays(PairBuffer(data, pair_count))
            decode_seconds += time.perf_counter() - started
            pairs += pair_count
            events += len(decoded)
            boundaries += int(decoded.is_boundary.sum())

            if not read_containers:
                continue

            # odd buffers get a valid magic and version so the reader goes deeper
            if index % 2:
                data = MAGIC + bytes([VERSION]) + data
            try:
                container.read(data)
                accepted += 1
            except BaseCodecException:
                rejected += 1

        summary = FuzzSummary(
            buffers=buffers,
            pairs_decoded=pairs,
            events=events,
            boundaries=boundaries,
            containers_rejected=rejected,
            containers_accepted=accepted,
            decode_seconds=decode_seconds,
        )
        logger.info("fuzzed %d buffers: %s", buffers, summary)
        return summary

    def render_bits_per_weight_table(self) -> str:
        rows = []
        for model in get_storage_models(self.settings):
            if model.name == NATIVETERNARY:
                overhead = "2 bits per layer, 4 per tensor"
            else:
                overhead = f"~{model.per_tensor_header_bytes:g} bytes per tensor"
            rows.append(
                (
                    model.name,
                    f"{model.bits_per_weight:.3f}",
                    overhead,
                    STORAGE_NOTES.get(model.name, ""),
                )
            )
        return format_table(
            ("Format", "Bits/weight", "Per-tensor overhead", "Notes"),
            rows,
            title="Bits per weight",
        )

    def render_size_table(self, scales: Optional[dict[str, int]] = None) -> str:
        """
        Payload sizes across model scales, three significant figures rounded
        upward, with ratios to two decimals.
        """

        rows = []
        for label, weights in (scales or MODEL_SCALES).items():
            estimates = {
                estimate.name: estimate
                for estimate in self.storage_comparison(weights, 0, 0)
            }
            native = estimates[NATIVETERNARY]
            q2k, q4, int8 = (
                estimates[name] for name in (GGUF_Q2_K, GGUF_Q4_0, GGUF_INT8)
            )
            unit = "KB" if native.payload_bytes < 1e6 else "MB"
            rows.append(
                (
                    label,
                    _count_label(weights),
                    format_size(native.payload_bytes, unit),
                    format_size(q2k.payload_bytes, unit),
                    format_size(q4.payload_bytes, unit),
                    f"{native.payload_bytes / q2k.payload_bytes:.2f}x",
                    f"{native.payload_bytes / int8.payload_bytes:.2f}x",
                )
            )
        return format_table(
            ("Scale", "Weights", "NT", "Q2_K", "Q4_0", "vs Q2_K", "vs int8"),
            rows,
            title="Encoded size across model scales",
        )

    def render_throughput_table(self, results: Iterable[BenchResult]) -> str:
        labels = {weights: label for label, weights in MODEL_SCALES.items()}
        rows = [
            (
                labels.get(result.scale, "Custom"),
                _count_label(result.scale),
                f"{result.encode_mbps:.1f}",
                f"{result.decode_mbps:.1f}",
            )
            for result in results
        ]
        return format_table(
            ("Scale", "Weights", "Encode MB/s", "Decode MB/s"),
            rows,
            title="Encode and decode throughput",
        )

    def render_boundary_table(
        self,
        manifest: Optional[ModelManifest] = None,
        weight_count: int = REFERENCE_MODEL_WEIGHTS,
    ) -> str:
        """
        Boundary overhead of a full model under NativeTernary and GGUF.
        """

        manifest = manifest or get_bitnet_manifest()
        estimates = self.storage_comparison(
            weight_count, manifest.tensor_count, manifest.layer_count
        )
        native = next(item for item in estimates if item.name == NATIVETERNARY)

        rows = []
        for estimate in estimates:
            if estimate.name == NATIVETERNARY:
                overhead = f"{estimate.header_bytes:g} bytes"
                ratio = f"{estimate.header_bytes / estimate.payload_bytes:.7%}"
            else:
                overhead = f"{estimate.header_bytes:,.0f} bytes"
                ratio = f"{estimate.overhead_ratio:.1f}x larger than NT"
            rows.append(
                (
                    estimate.name,
                    format_size(estimate.payload_bytes, "MB", ceil=False),
                    overhead,
                    ratio,
                )
            )

        table = format_table(
            ("Format", "Weight data", "Boundary/header overhead", "Overhead ratio"),
            rows,
            title=(
                f"Boundary overhead ({manifest.layer_count} layers, "
                f"{manifest.tensor_count} tensors)"
            ),
        )
        return (
            f"{table}\n"
            f"NativeTernary boundary bits: {boundary_overhead(manifest)} "
            f"({native.header_bytes:g} bytes); "
            f"published header ratio: {REFERENCE_BOUNDARY_RATIO}x"
        )


def _count_label(weights: int) -> str:
    for factor, suffix in ((1e9, "B"), (1e6, "M"), (1e3, "K")):
        if weights >= factor and weights % factor == 0:
            return f"{weights // int(factor)}{suffix}"
    return f"{weights:,}"


def data_density(variant: Variant) -> float:
    return AnalyticsService().data_density(variant)


def amortised_overhead(params: TextShapeParams) -> float:
    return AnalyticsService().amortised_overhead(params)


def storage_comparison(
    weight_count: int,
    tensor_count: int,
    models: Optional[list[StorageModel]] = None,
    layer_count: int = 0,
) -> list[StorageEstimate]:
    """
    Module-level form of AnalyticsService.storage_comparison.

    layer_count defaults to 0, so only the 4 bits per tensor are charged to
    NativeTernary; pass the model's layer count to include the 2 bits per
    layer (24 layers and 170 tensors give 91 boundary bytes).
    """

    return AnalyticsService().storage_comparison(
        weight_count, tensor_count, layer_count, models
    )


def throughput_bench(scale: int, seed: int) -> BenchResult:
    return AnalyticsService().throughput_bench(scale, seed)
