from typing import Sequence

import numpy as np

from nativeternary.config import Settings, settings
from nativeternary.exceptions.base_codec_exception import InvalidArgumentException
from nativeternary.exceptions.channel_exceptions import FlipPositionException
from nativeternary.logger import get_logger
from nativeternary.schemas import CorruptionReport, SchemeConfig, VulnerabilityEstimate
from nativeternary.services.base import BaseService
from nativeternary.services.codec import TernaryCodec
from nativeternary.services.container import ContainerService
from nativeternary.utils.dataclasses_utils import (
    CorruptionSpec,
    DecodedArrays,
    Event,
    PairBuffer,
)
from nativeternary.utils.enums import BitPair, Mapping

logger = get_logger(__name__)

HIGH_BIT = 0
LOW_BIT = 1


class ChannelSimulator(BaseService):
    """Bit-flip injection and decode-divergence classification.

    Payload bit b is bit b % 2 of pair b // 2, where bit 0 is the pair's
    high bit; this is also stream order, most significant bit first.
    """

    def __init__(
        self,
        config: SchemeConfig = SchemeConfig(),
        app_settings: Settings = settings,
    ):
        super().__init__(app_settings)
        self.config = config
        self.codec = TernaryCodec(config, app_settings)

    def resolve_positions(self, spec: CorruptionSpec, bit_count: int) -> np.ndarray:
        """
        Returns the bit positions a corruption spec flips.

        Explicit positions are returned as given (repeats included); a
        randomized corruption spec draws flip_count distinct positions from
        a generator seeded with spec.seed.

        Raises:
            FlipPositionException: If a position is out of range or more
                random flips are requested than there are bits.
        """

        if spec.flip_positions is not None:
            positions = np.asarray(spec.flip_positions, dtype=np.int64)
            bad = (positions < 0) | (positions >= bit_count)
            if np.any(bad):
                raise FlipPositionException(int(positions[bad][0]), bit_count)
            return positions

        if not 0 <= spec.flip_count <= bit_count:
            raise FlipPositionException(spec.flip_count, bit_count)

        rng = np.random.default_rng(spec.seed)
        positions = rng.choice(bit_count, size=spec.flip_count, replace=False)
        return np.sort(positions.astype(np.int64))

    def inject(self, buffer: PairBuffer, spec: CorruptionSpec) -> PairBuffer:
        """
        Inverts the bits a corruption spec names; flipping a bit twice restores it.

        Args:
            buffer: The clean payload.
            spec: Positions to flip.

        Returns:
            PairBuffer: The corrupted payload with the same pair count.
        """

        positions = self.resolve_positions(spec, buffer.bit_count)
        data = np.frombuffer(buffer.data, dtype=np.uint8).copy()
        masks = (0x80 >> (positions % 8)).astype(np.uint8)
        np.bitwise_xor.at(data, positions // 8, masks)

        return PairBuffer(data.tobytes(), buffer.pair_count)

    def flipped_pairs(self, buffer: PairBuffer, spec: CorruptionSpec) -> np.ndarray:
        """
        Pair indices touched by a corruption spec, sorted and unique.
        """

        return np.unique(self.resolve_positions(spec, buffer.bit_count) // 2)

    def classify(
        self,
        original: Sequence[Event],
        corrupted_decode: Sequence[Event],
        flipped_pairs: Sequence[int],
    ) -> CorruptionReport:
        """
        Classifies every corrupted pair and measures resynchronisation.

        Args:
            original: Events decoded from the clean payload.
            corrupted_decode: Events decoded from the corrupted payload.
            flipped_pairs: Indices of pairs that received bit flips.

        Returns:
            CorruptionReport: Class tallies and resync distances.
        """

        return self.classify_arrays(
            events_to_arrays(original),
            events_to_arrays(corrupted_decode),
            np.asarray(flipped_pairs, dtype=np.int64),
        )

    def classify_arrays(
        self,
        original: DecodedArrays,
        corrupted: DecodedArrays,
        flipped_pairs: np.ndarray,
    ) -> CorruptionReport:
        """
        Column-form classify.
        """

        original_pairs = self.codec.encode_arrays(
            original.is_boundary, original.values
        ).to_pairs()
        corrupted_pairs = self.codec.encode_arrays(
            corrupted.is_boundary, corrupted.values
        ).to_pairs()

        if len(original_pairs) != len(corrupted_pairs):
            raise InvalidArgumentException(
                "Bit flips keep the pair count; the two decodes span "
                f"{len(original_pairs)} and {len(corrupted_pairs)} pairs."
            )

        counts = self.classify_pairs(original_pairs, corrupted_pairs, flipped_pairs)
        corrupted_at = np.flatnonzero(original_pairs != corrupted_pairs)
        corrupted_at = np.intersect1d(corrupted_at, flipped_pairs)
        counts.update(
            _resync_counts(original, corrupted, corrupted_at, len(original_pairs))
        )

        report = CorruptionReport(**counts)
        if report.resynced_at_end:
            logger.debug(
                "%d corrupted pairs realigned only at the end of the stream",
                report.resynced_at_end,
            )
        return report

    def classify_pairs(
        self,
        original_pairs: np.ndarray,
        corrupted_pairs: np.ndarray,
        flipped_pairs: np.ndarray,
    ) -> dict[str, int]:
        """
        Per-pair role comparison of the flipped pairs that actually changed.

        Returns:
            dict: Class tallies and value-error statistics.
        """

        index = np.unique(np.asarray(flipped_pairs, dtype=np.int64))
        before = original_pairs[index]
        after = corrupted_pairs[index]
        changed = before != after
        before, after = before[changed], after[changed]

        delimiter = self.codec.delimiter
        was_delimiter = before == delimiter
        is_delimiter = after == delimiter
        value_flip = ~was_delimiter & ~is_delimiter

        trit_of = self.codec.trit_table
        old_values = trit_of[before[value_flip]]
        new_values = trit_of[after[value_flip]]

        sign_inversions = 0
        if self.config.mapping is Mapping.BALANCED:
            sign_inversions = int(np.sum(old_values * new_values < 0))

        return {
            "corrupted_pairs": int(changed.sum()),
            "false_boundaries": int(np.sum(~was_delimiter & is_delimiter)),
            "lost_or_split_boundaries": int(np.sum(was_delimiter & ~is_delimiter)),
            "value_flips": int(value_flip.sum()),
            "value_error_magnitude": int(np.abs(old_values - new_values).sum()),
            "sign_inversions": sign_inversions,
        }

    def corrupt(
        self, buffer: PairBuffer, spec: CorruptionSpec
    ) -> tuple[PairBuffer, CorruptionReport]:
        """
        Injects a corruption spec into a payload and classifies the damage.
        """

        corrupted = self.inject(buffer, spec)
        report = self.classify_arrays(
            self.codec.decode_arrays(buffer),
            self.codec.decode_arrays(corrupted),
            self.flipped_pairs(buffer, spec),
        )
        return corrupted, report

    def vulnerability_rate(
        self, trials: int, flips_per_trial: int, seed: int
    ) -> VulnerabilityEstimate:
        """
        Monte-Carlo rate at which one bit flip in a data pair forges a delimiter.

        Each trial encodes uniform random trits and flips one random bit in
        each of flips_per_trial distinct data pairs. The delimiter has two
        neighbours at Hamming distance 1 and both are data pairs, so 2 of the
        6 (pair, bit) flips forge a boundary and the rate converges to 1/3.

        Raises:
            InvalidArgumentException: If trials < 1 or flips_per_trial < 0.
        """

        if trials < 1 or flips_per_trial < 0:
            raise InvalidArgumentException(
                "vulnerability_rate needs trials >= 1 and flips_per_trial >= 0."
            )

        rng = np.random.default_rng(seed)
        pair_count = 2 * flips_per_trial
        false_boundaries = 0

        for _ in range(trials if flips_per_trial else 0):
            trits = rng.integers(0, 3, size=pair_count) + self.codec.offset
            buffer = self.codec.encode_trits(trits)
            pairs = rng.choice(pair_count, size=flips_per_trial, replace=False)
            bits = rng.integers(0, 2, size=flips_per_trial)
            spec = CorruptionSpec(flip_positions=tuple((2 * pairs + bits).tolist()))

            corrupted = self.inject(buffer, spec).to_pairs()
            false_boundaries += int(np.sum(corrupted[pairs] == self.codec.delimiter))

        estimate = VulnerabilityEstimate(
            samples=trials * flips_per_trial, false_boundaries=false_boundaries
        )
        logger.debug("vulnerability estimate %s", estimate)
        return estimate

    def distance_one_census(self) -> list[tuple[BitPair, int, BitPair, bool]]:
        """
        Every (data pair, bit) flip with its result and whether the result
        is the delimiter.

        Returns:
            list: (pair, bit, flipped pair, reaches delimiter) for the six flips.
        """

        census = []
        for pair in self.codec.data_symbols():
            for bit in (HIGH_BIT, LOW_BIT):
                flipped = BitPair(pair ^ (0b10 >> bit))
                census.append((pair, bit, flipped, flipped == self.codec.delimiter))
        return census


def corrupt_container(
    file: bytes, spec: CorruptionSpec, app_settings: Settings = settings
) -> tuple[bytes, CorruptionReport]:
    """
    Corrupts a container's payload, keeping header and manifest intact.

    Args:
        file: A single-delimiter container.
        spec: Bit positions within the payload.

    Returns:
        tuple: The corrupted container and the damage report.
    """

    container = ContainerService(app_settings)
    contents = container.read(file)
    simulator = ChannelSimulator(contents.config, app_settings)
    corrupted, report = simulator.corrupt(contents.payload, spec)

    if contents.manifest is not None:
        output = container.write_model_container(
            corrupted, contents.config, contents.manifest
        )
    else:
        output = container.write_container(
            corrupted, contents.config, contents.transcoded_length
        )
    return output, report


def events_to_arrays(events: Sequence[Event]) -> DecodedArrays:
    is_boundary = np.fromiter(
        (event.is_boundary for event in events), dtype=bool, count=len(events)
    )
    values = np.fromiter(
        (event.level if event.is_boundary else event.trit for event in events),
        dtype=np.int64,
        count=len(events),
    )
    return DecodedArrays(is_boundary, values)


def _event_starts(decoded: DecodedArrays) -> np.ndarray:
    lengths = np.where(decoded.is_boundary, decoded.values, 1)
    return np.concatenate([[0], np.cumsum(lengths)[:-1]]).astype(np.int64)


def _resync_counts(
    original: DecodedArrays,
    corrupted: DecodedArrays,
    corrupted_at: np.ndarray,
    pair_count: int,
) -> dict[str, int]:
    """
    For each corrupted pair, finds the first pair offset after it where both
    decodes start an event; from there the decodes agree until the next
    corrupted pair. The end of the stream counts as such an offset, since
    both remaining suffixes are empty there. The distance is the number of
    corrupted-stream events from the one holding the damaged pair up to that
    offset.
    """

    if not len(corrupted_at):
        return {"resync_events": 0, "resynced_at_end": 0, "resync_distance_total": 0}

    original_starts = _event_starts(original)
    corrupted_starts = _event_starts(corrupted)
    common = np.append(np.intersect1d(original_starts, corrupted_starts), pair_count)

    holder = np.searchsorted(corrupted_starts, corrupted_at, side="right") - 1
    realign_offsets = common[np.searchsorted(common, corrupted_at, side="right")]
    realign_events = np.searchsorted(corrupted_starts, realign_offsets)
    distances = realign_events - holder

    return {
        "resync_events": len(corrupted_at),
        "resynced_at_end": int((realign_offsets == pair_count).sum()),
        "resync_distance_total": int(distances.sum()),
    }


def inject(
    buffer: PairBuffer, spec: CorruptionSpec, config: SchemeConfig = SchemeConfig()
) -> PairBuffer:
    return ChannelSimulator(config).inject(buffer, spec)


def classify(
    original: Sequence[Event],
    corrupted_decode: Sequence[Event],
    flipped_pairs: Sequence[int],
    config: SchemeConfig = SchemeConfig(),
) -> CorruptionReport:
    return ChannelSimulator(config).classify(original, corrupted_decode, flipped_pairs)


def vulnerability_rate(
    config: SchemeConfig, trials: int, flips_per_trial: int, seed: int
) -> VulnerabilityEstimate:
    return ChannelSimulator(config).vulnerability_rate(trials, flips_per_trial, seed)
