from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from nativeternary.exceptions.codec_exceptions import PairCountException
from nativeternary.utils.enums import EventKind, Namespace
from nativeternary.utils.pair_utils import pack_pairs, required_bytes, unpack_pairs

MAX_PAIR_COUNT = 2**64 - 1


@dataclass(frozen=True, slots=True)
class Event:
    kind: EventKind
    trit: Optional[int] = None
    level: Optional[int] = None

    @classmethod
    def data(cls, trit: int) -> "Event":
        return cls(EventKind.DATA, trit=trit)

    @classmethod
    def boundary(cls, level: int) -> "Event":
        return cls(EventKind.BOUNDARY, level=level)

    @property
    def is_boundary(self) -> bool:
        return self.kind is EventKind.BOUNDARY

    @property
    def pair_cost(self) -> int:
        """
        Number of pairs the event occupies once encoded.
        """

        return self.level if self.is_boundary else 1

    def __repr__(self) -> str:
        if self.is_boundary:
            return f"B{self.level}"

        return f"D{self.trit:+d}" if self.trit else "D0"


@dataclass(frozen=True, slots=True)
class PairBuffer:
    data: bytes = b""
    pair_count: int = 0

    def __post_init__(self):
        if not 0 <= self.pair_count <= MAX_PAIR_COUNT:
            raise PairCountException(self.pair_count, len(self.data))

        if self.pair_count > 4 * len(self.data):
            raise PairCountException(self.pair_count, len(self.data))

    @classmethod
    def from_pairs(cls, pairs: np.ndarray) -> "PairBuffer":
        """
        Builds a buffer from an array of pair values.

        Args:
            pairs: Array of integers in [0, 3].

        Returns:
            PairBuffer: The packed buffer.
        """

        return cls(pack_pairs(pairs), len(pairs))

    def to_pairs(self) -> np.ndarray:
        """
        Returns the payload pairs as a uint8 array, padding excluded.
        """

        return unpack_pairs(self.data, self.pair_count)

    @property
    def payload(self) -> bytes:
        """
        The bytes that hold the pairs, without any extra bytes beyond them.
        """

        return self.data[: required_bytes(self.pair_count)]

    @property
    def bit_count(self) -> int:
        return 2 * self.pair_count


@dataclass(frozen=True, slots=True)
class DualSymbol:
    namespace: Namespace
    bits: tuple[int, ...] = field(default_factory=tuple)

    @classmethod
    def from_text(cls, namespace: Namespace | str, bits: str = "") -> "DualSymbol":
        """
        Builds a symbol from a namespace tag and a string of "0"/"1" digits.
        """

        return cls(Namespace(namespace), tuple(int(bit) for bit in bits))

    @property
    def bit_text(self) -> str:
        return "".join(str(bit) for bit in self.bits)


@dataclass(frozen=True, slots=True, eq=False)
class DecodedArrays:
    """Column form of a decoded event sequence.

    `is_boundary[i]` tells the kind of event i; `values[i]` is the trit for
    data events and the level for boundaries.
    """

    is_boundary: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, slots=True)
class CorruptionSpec:
    flip_positions: Optional[tuple[int, ...]] = None
    flip_count: int = 0
    seed: int = 0

    @classmethod
    def at(cls, *positions: int) -> "CorruptionSpec":
        return cls(flip_positions=tuple(positions))

    @classmethod
    def random(cls, flip_count: int, seed: int) -> "CorruptionSpec":
        return cls(flip_count=flip_count, seed=seed)
