from collections import Counter
from typing import Iterable, Sequence

import numpy as np

from nativeternary.config import Settings, settings
from nativeternary.exceptions.codec_exceptions import (
    AdjacentBoundaryException,
    BoundaryLevelException,
    DelimiterPairException,
    SchemeConflictException,
    TritDomainException,
)
from nativeternary.logger import get_logger
from nativeternary.schemas import SchemeConfig
from nativeternary.services.base import BaseService
from nativeternary.utils.dataclasses_utils import DecodedArrays, Event, PairBuffer
from nativeternary.utils.enums import BitPair, Variant

logger = get_logger(__name__)

EMPTY_DECODE = DecodedArrays(np.zeros(0, dtype=bool), np.zeros(0, dtype=np.int64))


class TernaryCodec(BaseService):
    """Single-delimiter NativeTernary encoder and decoder.

    Three of the four bit-pairs carry trits, the fourth is the delimiter; a
    run of N delimiter pairs is one boundary of level N.
    """

    def __init__(
        self,
        config: SchemeConfig = SchemeConfig(),
        app_settings: Settings = settings,
    ):
        super().__init__(app_settings)

        if config.variant is not Variant.SINGLE:
            raise SchemeConflictException(
                "the single-delimiter codec cannot run a dual-starter scheme"
            )

        self.config = config
        self.delimiter = int(config.delimiter)
        self.domain = config.mapping.domain
        self.offset = config.mapping.offset

        self._rank_to_pair = np.array(
            [pair for pair in range(4) if pair != self.delimiter], dtype=np.uint8
        )
        self._pair_to_trit = np.zeros(4, dtype=np.int64)
        self._pair_to_trit[self._rank_to_pair] = np.array(self.domain)
        self._pair_to_trit.flags.writeable = False

    @property
    def trit_table(self) -> np.ndarray:
        """
        Read-only lookup indexed by pair value; the delimiter slot holds 0.
        """

        return self._pair_to_trit

    def data_symbols(self) -> list[BitPair]:
        """
        The three data pairs in ascending order; rank i carries the i-th
        smallest trit of the mapping.

        Returns:
            list[BitPair]: Data pairs for trit ranks 0, 1, 2.
        """

        return [BitPair(int(pair)) for pair in self._rank_to_pair]

    def trit_to_pair(self, trit: int) -> BitPair:
        """
        Maps a trit of the active domain onto its data pair.

        Args:
            trit: A value of the active mapping's domain.

        Returns:
            BitPair: The data pair carrying the trit.

        Raises:
            TritDomainException: If the trit lies outside the domain.
        """

        if trit not in self.domain:
            raise TritDomainException(trit, self.domain)

        return BitPair(int(self._rank_to_pair[trit - self.offset]))

    def pair_to_trit(self, pair: BitPair | int) -> int:
        """
        Inverse of trit_to_pair.

        Raises:
            DelimiterPairException: If the pair is the delimiter.
        """

        pair = BitPair(pair)
        if pair == self.delimiter:
            raise DelimiterPairException(pair.label)

        return int(self._pair_to_trit[pair])

    def encode(self, events: Sequence[Event]) -> PairBuffer:
        """
        Encodes an event sequence.

        Each data event becomes one data pair; a boundary of level L becomes
        L delimiter pairs.

        Args:
            events: Events with trits in the active domain and levels >= 1.
                Adjacent boundaries must be coalesced beforehand.

        Returns:
            PairBuffer: Packed pairs with the exact pair count.
        """

        is_boundary = np.fromiter(
            (event.is_boundary for event in events), dtype=bool, count=len(events)
        )
        values = np.fromiter(
            (event.level if event.is_boundary else event.trit for event in events),
            dtype=np.int64,
            count=len(events),
        )

        return self.encode_arrays(is_boundary, values)

    def encode_trits(self, trits: np.ndarray) -> PairBuffer:
        """
        Encodes a boundary-free trit array.

        Args:
            trits: Integer array of trits in the active domain.

        Returns:
            PairBuffer: One pair per trit.
        """

        ranks = np.asarray(trits, dtype=np.int64) - self.offset
        self._check_ranks(ranks, trits)

        return PairBuffer.from_pairs(self._rank_to_pair[ranks])

    def encode_arrays(self, is_boundary: np.ndarray, values: np.ndarray) -> PairBuffer:
        """
        Encodes an event sequence given in column form.

        Args:
            is_boundary: Boolean array, True where the event is a boundary.
            values: Trit for data events, level for boundary events.

        Returns:
            PairBuffer: Packed pairs.

        Raises:
            BoundaryLevelException: If a boundary level is below 1.
            TritDomainException: If a data value is outside the domain.
            AdjacentBoundaryException: If two boundaries are adjacent.
        """

        is_boundary = np.asarray(is_boundary, dtype=bool)
        values = np.asarray(values, dtype=np.int64)

        levels = values[is_boundary]
        if np.any(levels < 1):
            raise BoundaryLevelException(int(levels[levels < 1][0]))

        adjacent = np.flatnonzero(is_boundary[1:] & is_boundary[:-1])
        if adjacent.size:
            raise AdjacentBoundaryException(int(adjacent[0]) + 1)

        ranks = np.where(is_boundary, 0, values - self.offset)
        self._check_ranks(ranks, values)

        symbols = np.where(is_boundary, self.delimiter, self._rank_to_pair[ranks])
        counts = np.where(is_boundary, values, 1)
        pairs = np.repeat(symbols.astype(np.uint8), counts)

        logger.debug(
            "encoded %d events into %d pairs (%s)",
            len(values),
            len(pairs),
            self.config.describe(),
        )

        return PairBuffer.from_pairs(pairs)

    def decode(self, buffer: PairBuffer) -> list[Event]:
        """
        Decodes a buffer into events. Total: every pair sequence decodes.

        Delimiter runs are maximal, so a run of L delimiter pairs is exactly
        one boundary of level L, including a run cut off by the end of the
        stream.

        Args:
            buffer: The packed pairs.

        Returns:
            list[Event]: The decoded events.
        """

        return arrays_to_events(self.decode_arrays(buffer))

    def decode_arrays(self, buffer: PairBuffer) -> DecodedArrays:
        """
        Column-form decode of a buffer.
        """

        return self.decode_pairs(buffer.to_pairs())

    def decode_pairs(self, pairs: np.ndarray) -> DecodedArrays:
        """
        Column-form decode of an unpacked pair array.

        Args:
            pairs: Array of pair values in [0, 3].

        Returns:
            DecodedArrays: Event kinds and values.
        """

        count = len(pairs)
        if not count:
            return EMPTY_DECODE

        is_delimiter = pairs == self.delimiter
        # an event starts at every data pair and at the first pair of each run
        run_head = np.empty(count, dtype=bool)
        run_head[0] = True
        np.logical_not(is_delimiter[:-1], out=run_head[1:])
        starts = np.flatnonzero(~is_delimiter | run_head)

        lengths = np.diff(starts, append=count)
        is_boundary = is_delimiter[starts]
        values = np.where(is_boundary, lengths, self._pair_to_trit[pairs[starts]])

        return DecodedArrays(is_boundary, values)

    def session(self) -> "DecodeSession":
        return DecodeSession(self)

    def _check_ranks(self, ranks: np.ndarray, values: np.ndarray) -> None:
        bad = (ranks < 0) | (ranks > 2)
        if np.any(bad):
            raise TritDomainException(int(np.asarray(values)[bad][0]), self.domain)


class DecodeSession:
    """Streaming decode over successive chunks of one stream.

    A delimiter run that reaches the end of a chunk is held back until the
    next chunk shows where it ends, so chunked output equals one-shot output.
    Not safe to share between threads.
    """

    def __init__(self, codec: TernaryCodec):
        self.codec = codec
        self.pending_level = 0
        self.pairs_seen = 0

    def feed(self, buffer: PairBuffer) -> DecodedArrays:
        """
        Decodes one chunk, returning every event completed so far.
        """

        pairs = buffer.to_pairs()
        self.pairs_seen += len(pairs)
        if not len(pairs):
            return EMPTY_DECODE

        decoded = self.codec.decode_pairs(pairs)
        is_boundary, values = decoded.is_boundary, decoded.values

        if self.pending_level:
            if is_boundary[0]:
                values = values.copy()
                values[0] += self.pending_level
            else:
                is_boundary = np.concatenate([[True], is_boundary])
                values = np.concatenate([[self.pending_level], values])
            self.pending_level = 0

        if pairs[-1] == self.codec.delimiter:
            self.pending_level = int(values[-1])
            is_boundary, values = is_boundary[:-1], values[:-1]

        return DecodedArrays(is_boundary, values)

    def close(self) -> DecodedArrays:
        """
        Ends the stream, emitting a held-back trailing boundary.
        """

        if not self.pending_level:
            return EMPTY_DECODE

        level, self.pending_level = self.pending_level, 0
        return DecodedArrays(np.array([True]), np.array([level], dtype=np.int64))


def arrays_to_events(decoded: DecodedArrays) -> list[Event]:
    """
    Converts column-form decode output into Event objects.
    """

    return [
        Event.boundary(value) if boundary else Event.data(value)
        for boundary, value in zip(
            decoded.is_boundary.tolist(), decoded.values.tolist()
        )
    ]


def coalesce(events: Iterable[Event]) -> list[Event]:
    """
    Merges runs of adjacent boundary events into one boundary of the summed
    level, the form the encoder accepts.
    """

    merged: list[Event] = []
    for event in events:
        if event.is_boundary and merged and merged[-1].is_boundary:
            merged[-1] = Event.boundary(merged[-1].level + event.level)
        else:
            merged.append(event)
    return merged


def boundary_census(events: Iterable[Event]) -> dict[int, int]:
    """
    Counts boundary events per level, ordered by level.
    """

    census = Counter(event.level for event in events if event.is_boundary)
    return dict(sorted(census.items()))


def data_symbols(config: SchemeConfig) -> list[BitPair]:
    return TernaryCodec(config).data_symbols()


def trit_to_pair(trit: int, config: SchemeConfig) -> BitPair:
    return TernaryCodec(config).trit_to_pair(trit)


def pair_to_trit(pair: BitPair | int, config: SchemeConfig) -> int:
    return TernaryCodec(config).pair_to_trit(pair)


def encode(events: Sequence[Event], config: SchemeConfig) -> PairBuffer:
    return TernaryCodec(config).encode(events)


def decode(buffer: PairBuffer, config: SchemeConfig) -> list[Event]:
    return TernaryCodec(config).decode(buffer)
