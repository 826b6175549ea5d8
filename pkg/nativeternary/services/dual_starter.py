from typing import Sequence

import numpy as np

from nativeternary.config import Settings, settings
from nativeternary.exceptions.base_codec_exception import InvalidArgumentException
from nativeternary.logger import get_logger
from nativeternary.schemas import SchemeConfig
from nativeternary.services.base import BaseService
from nativeternary.utils.dataclasses_utils import DualSymbol, PairBuffer
from nativeternary.utils.enums import BitPair, Namespace, Variant

logger = get_logger(__name__)


class DualStarterCodec(BaseService):
    """Dual-starter variant: two starter pairs open namespaces A and B, the
    two remaining pairs are continuations carrying one data bit each."""

    def __init__(
        self,
        config: SchemeConfig = SchemeConfig(variant=Variant.DUAL),
        app_settings: Settings = settings,
    ):
        super().__init__(app_settings)

        self.config = config
        self.starters = {
            Namespace.A: int(config.starters[0]),
            Namespace.B: int(config.starters[1]),
        }
        self.continuations = tuple(
            pair for pair in range(4) if pair not in self.starters.values()
        )

        # pair value -> namespace for starters, bit value for continuations
        self._starter_of = {pair: name for name, pair in self.starters.items()}
        self._bit_of = {pair: bit for bit, pair in enumerate(self.continuations)}

    @property
    def continuation_pairs(self) -> tuple[BitPair, BitPair]:
        return BitPair(self.continuations[0]), BitPair(self.continuations[1])

    def encode(self, symbols: Sequence[DualSymbol]) -> PairBuffer:
        """
        Encodes symbols as a starter pair followed by one continuation pair
        per payload bit.

        Args:
            symbols: Symbols to encode.

        Returns:
            PairBuffer: The packed pairs.
        """

        continuation = np.array(self.continuations, dtype=np.uint8)
        chunks = []
        for symbol in symbols:
            chunks.append(np.array([self.starters[symbol.namespace]], dtype=np.uint8))
            if any(bit not in (0, 1) for bit in symbol.bits):
                raise InvalidArgumentException(
                    f"Dual-starter payload bits must be 0 or 1, got {symbol.bits}."
                )
            if symbol.bits:
                chunks.append(continuation[np.array(symbol.bits, dtype=np.intp)])

        pairs = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint8)
        return PairBuffer.from_pairs(pairs)

    def decode(self, buffer: PairBuffer) -> tuple[list[DualSymbol], int]:
        """
        Decodes a buffer into symbols.

        Continuation pairs before the first starter cannot belong to a known
        symbol; they are counted and skipped, which is how a reader joining
        mid-stream resynchronises. A symbol runs until the next starter or
        the end of the stream.

        Args:
            buffer: The packed pairs.

        Returns:
            tuple: The symbols and the number of skipped leading pairs.
        """

        pairs = buffer.to_pairs().tolist()
        symbols: list[DualSymbol] = []
        skipped = 0
        namespace = None
        bits: list[int] = []

        for pair in pairs:
            if pair in self._starter_of:
                if namespace is not None:
                    symbols.append(DualSymbol(namespace, tuple(bits)))
                namespace, bits = self._starter_of[pair], []
            elif namespace is None:
                skipped += 1
            else:
                bits.append(self._bit_of[pair])

        if namespace is not None:
            symbols.append(DualSymbol(namespace, tuple(bits)))

        if skipped:
            logger.warning(
                "skipped %d continuation pairs before the first starter", skipped
            )

        return symbols, skipped


DUAL_CONFIG = SchemeConfig(variant=Variant.DUAL)


def encode_dual(
    symbols: Sequence[DualSymbol], config: SchemeConfig = DUAL_CONFIG
) -> PairBuffer:
    return DualStarterCodec(config).encode(symbols)


def decode_dual(
    buffer: PairBuffer, config: SchemeConfig = DUAL_CONFIG
) -> tuple[list[DualSymbol], int]:
    return DualStarterCodec(config).decode(buffer)
