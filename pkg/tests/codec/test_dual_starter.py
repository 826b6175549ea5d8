import numpy as np
import pytest

from nativeternary.exceptions.base_codec_exception import InvalidArgumentException
from nativeternary.schemas import SchemeConfig
from nativeternary.services.dual_starter import (
    DualStarterCodec,
    decode_dual,
    encode_dual,
)
from nativeternary.utils.dataclasses_utils import DualSymbol, PairBuffer
from nativeternary.utils.enums import BitPair, Namespace, Variant
from tests.utils import pairs_of, random_symbols


@pytest.fixture(name="dual_codec")
def fixture_dual_codec():
    """
    Fixture for the dual-starter codec with starters 10 (A) and 11 (B).

    Returns:
        DualStarterCodec: The codec.
    """

    return DualStarterCodec()


def test_continuation_pairs(dual_codec: DualStarterCodec):
    assert dual_codec.continuation_pairs == (BitPair.P00, BitPair.P01)


def test_encode_single_symbol(dual_codec: DualStarterCodec):
    """
    [A:"01"] packs into pairs 10, 00, 01, byte 0x84.

    Args:
        dual_codec (fixture): Dual-starter codec.
    """

    buffer = dual_codec.encode([DualSymbol.from_text("A", "01")])

    assert buffer.pair_count == 3
    assert buffer.data == b"\x84"


def test_encode_empty_and_bit_symbols():
    buffer = encode_dual([DualSymbol.from_text("A"), DualSymbol.from_text("B", "1")])

    assert pairs_of(buffer.data, buffer.pair_count) == ["10", "11", "01"]


def test_encode_rejects_non_bits(dual_codec: DualStarterCodec):
    with pytest.raises(InvalidArgumentException):
        dual_codec.encode([DualSymbol(Namespace.A, (0, 2))])


@pytest.mark.parametrize(
    "pairs, expected, skipped",
    [
        ([0, 1, 2, 0], [DualSymbol.from_text("A", "0")], 2),
        ([2, 0, 1], [DualSymbol.from_text("A", "01")], 0),
        ([], [], 0),
        ([1, 1, 1], [], 3),
        ([3, 2], [DualSymbol.from_text("B"), DualSymbol.from_text("A")], 0),
    ],
)
def test_decode_examples(pairs: list[int], expected: list[DualSymbol], skipped: int):
    """
    Leading continuation pairs are skipped and counted.

    Args:
        pairs: Pair values of the buffer.
        expected: The symbols decoded.
        skipped: The number of leading pairs skipped.
    """

    buffer = PairBuffer.from_pairs(np.array(pairs, dtype=np.uint8))

    assert decode_dual(buffer) == (expected, skipped)


def test_round_trip(dual_codec: DualStarterCodec, rng: np.random.Generator):
    for _ in range(10_000):
        symbols = random_symbols(rng)

        assert dual_codec.decode(dual_codec.encode(symbols)) == (symbols, 0)


def test_custom_starters(rng: np.random.Generator):
    """
    Starters 00 and 01 leave 10 and 11 as the continuation pairs.
    """

    config = SchemeConfig(variant=Variant.DUAL, starters=(BitPair.P00, BitPair.P01))
    codec = DualStarterCodec(config)

    buffer = encode_dual([DualSymbol.from_text("A", "01")], config)

    assert codec.continuation_pairs == (BitPair.P10, BitPair.P11)
    assert pairs_of(buffer.data, buffer.pair_count) == ["00", "10", "11"]
    assert decode_dual(buffer, config) == ([DualSymbol.from_text("A", "01")], 0)

    for _ in range(1_000):
        symbols = random_symbols(rng)

        assert codec.decode(codec.encode(symbols)) == (symbols, 0)


def test_density(dual_codec: DualStarterCodec, rng: np.random.Generator):
    """
    A long single-symbol payload costs two encoded bits per data bit.

    Args:
        dual_codec (fixture): Dual-starter codec.
        rng (fixture): Seeded generator.
    """

    bits = tuple(int(bit) for bit in rng.integers(0, 2, size=10_000))
    buffer = dual_codec.encode([DualSymbol(Namespace.B, bits)])

    assert buffer.bit_count / len(bits) == pytest.approx(2.0, rel=0.01)


def test_resync_after_truncation(dual_codec: DualStarterCodec, rng: np.random.Generator):
    """
    Decoding from any pair offset loses at most the symbol in progress.

    Args:
        dual_codec (fixture): Dual-starter codec.
        rng (fixture): Seeded generator.
    """

    for _ in range(500):
        symbols = random_symbols(rng, max_symbols=10)
        pairs = dual_codec.encode(symbols).to_pairs()
        if not len(pairs):
            continue

        offset = int(rng.integers(0, len(pairs)))
        decoded, skipped = dual_codec.decode(PairBuffer.from_pairs(pairs[offset:]))

        starts = np.flatnonzero(pairs >= 2)
        later = starts[starts >= offset]
        if not later.size:
            assert decoded == []
            continue

        first = int(np.searchsorted(starts, later[0]))
        assert skipped == later[0] - offset
        assert decoded == symbols[first:]
