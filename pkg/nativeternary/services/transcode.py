import math

import numpy as np

from nativeternary.config import Settings, settings
from nativeternary.exceptions.base_codec_exception import InvalidArgumentException
from nativeternary.exceptions.codec_exceptions import TritDomainException
from nativeternary.exceptions.container_exceptions import BlockValueOverflowException
from nativeternary.logger import get_logger
from nativeternary.schemas import TritBlockCodecParams, minimal_trits_per_block
from nativeternary.services.base import BaseService

logger = get_logger(__name__)

# block integers are divided in chunks of 16 trits; 3**16 * 256 fits in uint64
CHUNK_TRITS = 16
CHUNK_RADIX = 3**CHUNK_TRITS
CHUNK_POWERS = (3 ** np.arange(CHUNK_TRITS - 1, -1, -1)).astype(np.uint64)

IDEAL_EXPANSION = 2 / math.log2(3)


class TritBlockTranscoder(BaseService):
    """Lossless binary <-> unsigned-trit conversion in fixed-size blocks.

    Each block of m bytes is read as a big-endian integer and written as the
    minimal number of base-3 digits t with 3**t >= 256**m, most significant
    digit first. The final block may be shorter and gets its own minimal t.
    """

    def __init__(
        self,
        params: TritBlockCodecParams | None = None,
        app_settings: Settings = settings,
    ):
        super().__init__(app_settings)
        self.params = params or TritBlockCodecParams(
            block_bytes=app_settings.transcode_block_bytes
        )

    @property
    def block_bytes(self) -> int:
        return self.params.block_bytes

    def trit_length(self, byte_length: int) -> int:
        """
        Number of trits produced for an input of byte_length bytes.
        """

        full_blocks, tail = divmod(byte_length, self.block_bytes)
        return full_blocks * self.params.trits_per_block + minimal_trits_per_block(
            tail
        )

    def binary_to_trits(self, data: bytes) -> np.ndarray:
        """
        Converts bytes into unsigned trits.

        Args:
            data: Arbitrary bytes.

        Returns:
            np.ndarray: uint8 trits in {0, 1, 2}; length depends only on len(data).
        """

        raw = np.frombuffer(data, dtype=np.uint8) if data else np.zeros(0, np.uint8)
        full_blocks, tail = divmod(len(raw), self.block_bytes)
        cut = full_blocks * self.block_bytes

        parts = [
            _blocks_to_trits(
                raw[:cut].reshape(full_blocks, self.block_bytes),
                self.params.trits_per_block,
            ).reshape(-1)
        ]
        if tail:
            parts.append(
                _blocks_to_trits(
                    raw[cut:].reshape(1, tail), minimal_trits_per_block(tail)
                ).reshape(-1)
            )

        trits = np.concatenate(parts)
        logger.debug("transcoded %d bytes into %d trits", len(raw), len(trits))
        return trits

    def trits_to_binary(self, trits: np.ndarray, original_byte_length: int) -> bytes:
        """
        Inverse of binary_to_trits.

        Args:
            trits: Unsigned trits as produced by binary_to_trits.
            original_byte_length: Length of the original byte string.

        Returns:
            bytes: The original bytes.

        Raises:
            InvalidArgumentException: If the trit count does not match the
                block structure implied by original_byte_length.
            TritDomainException: If a trit is outside {0, 1, 2}.
            BlockValueOverflowException: If a block encodes a value too large
                for its byte count.
        """

        trits = np.asarray(trits, dtype=np.int64)
        expected = self.trit_length(original_byte_length)

        if original_byte_length < 0 or len(trits) != expected:
            raise InvalidArgumentException(
                f"{len(trits)} trits do not match a {original_byte_length}-byte "
                f"input ({expected} trits expected)."
            )

        bad = (trits < 0) | (trits > 2)
        if np.any(bad):
            raise TritDomainException(int(trits[bad][0]), (0, 1, 2))

        full_blocks, tail = divmod(original_byte_length, self.block_bytes)
        trits_per_block = self.params.trits_per_block
        cut = full_blocks * trits_per_block

        parts = [
            _trits_to_blocks(
                trits[:cut].reshape(full_blocks, trits_per_block), self.block_bytes
            ).reshape(-1)
        ]
        if tail:
            parts.append(
                _trits_to_blocks(
                    trits[cut:].reshape(1, -1), tail, first_block=full_blocks
                ).reshape(-1)
            )

        return np.concatenate(parts).astype(np.uint8).tobytes()

    def expansion_factor(self) -> float:
        """
        Encoded bits per input bit: (2 * trits_per_block) / (8 * block_bytes).
        """

        return (2 * self.params.trits_per_block) / (8 * self.block_bytes)

    def measured_expansion(self, data: bytes) -> float:
        """
        Encoded bits per input bit for a concrete input.
        """

        if not data:
            return 0.0
        return 2 * self.trit_length(len(data)) / (8 * len(data))


def _blocks_to_trits(blocks: np.ndarray, trit_count: int) -> np.ndarray:
    """
    Base-256 to base-3 conversion of every row at once, by repeated long
    division of the rows by 3**16.
    """

    block_count, width = blocks.shape
    chunk_count = -(-trit_count // CHUNK_TRITS)
    dividend = blocks.astype(np.uint64)
    chunks = np.zeros((block_count, chunk_count), dtype=np.uint64)

    for chunk in range(chunk_count - 1, -1, -1):
        remainder = np.zeros(block_count, dtype=np.uint64)
        for column in range(width):
            current = remainder * 256 + dividend[:, column]
            dividend[:, column] = current // CHUNK_RADIX
            remainder = current % CHUNK_RADIX
        chunks[:, chunk] = remainder

    digits = (chunks[:, :, None] // CHUNK_POWERS) % 3
    digits = digits.reshape(block_count, chunk_count * CHUNK_TRITS)

    return digits[:, chunk_count * CHUNK_TRITS - trit_count :].astype(np.uint8)


def _trits_to_blocks(
    trits: np.ndarray, width: int, first_block: int = 0
) -> np.ndarray:
    """
    Base-3 to base-256 conversion of every row at once; a row whose value
    needs more than width bytes raises BlockValueOverflowException.
    """

    block_count, trit_count = trits.shape
    chunk_count = -(-trit_count // CHUNK_TRITS)
    padded = np.zeros((block_count, chunk_count * CHUNK_TRITS), dtype=np.uint64)
    padded[:, chunk_count * CHUNK_TRITS - trit_count :] = trits
    chunks = (padded.reshape(block_count, chunk_count, CHUNK_TRITS) * CHUNK_POWERS).sum(
        axis=2, dtype=np.uint64
    )

    accumulator = np.zeros((block_count, width), dtype=np.uint64)
    overflow = np.zeros(block_count, dtype=bool)

    for chunk in range(chunk_count):
        carry = chunks[:, chunk]
        for column in range(width - 1, -1, -1):
            current = accumulator[:, column] * CHUNK_RADIX + carry
            accumulator[:, column] = current & 0xFF
            carry = current >> 8
        overflow |= carry != 0

    if np.any(overflow):
        raise BlockValueOverflowException(
            first_block + int(np.flatnonzero(overflow)[0]), width
        )

    return accumulator


def binary_to_trits(
    data: bytes, params: TritBlockCodecParams = TritBlockCodecParams()
) -> np.ndarray:
    return TritBlockTranscoder(params).binary_to_trits(data)


def trits_to_binary(
    trits: np.ndarray,
    original_byte_length: int,
    params: TritBlockCodecParams = TritBlockCodecParams(),
) -> bytes:
    return TritBlockTranscoder(params).trits_to_binary(trits, original_byte_length)


def expansion_factor(params: TritBlockCodecParams = TritBlockCodecParams()) -> float:
    return TritBlockTranscoder(params).expansion_factor()
