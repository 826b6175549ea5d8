import numpy as np
import pytest

from nativeternary.exceptions.base_codec_exception import (
    CorruptionException,
    InvalidArgumentException,
)
from nativeternary.exceptions.codec_exceptions import TritDomainException
from nativeternary.exceptions.container_exceptions import BlockValueOverflowException
from nativeternary.schemas import TritBlockCodecParams
from nativeternary.services.transcode import (
    IDEAL_EXPANSION,
    TritBlockTranscoder,
    binary_to_trits,
    expansion_factor,
    trits_to_binary,
)


@pytest.fixture(name="transcoder")
def fixture_transcoder():
    """
    Fixture for the default 19-byte block transcoder.

    Returns:
        TritBlockTranscoder: The transcoder.
    """

    return TritBlockTranscoder()


def test_default_block_parameters(transcoder: TritBlockTranscoder):
    assert transcoder.params.block_bytes == 19
    assert transcoder.params.trits_per_block == 96


def test_non_minimal_trit_count_rejected():
    with pytest.raises(ValueError):
        TritBlockCodecParams(block_bytes=1, trits_per_block=7)


def test_single_byte():
    """
    0x05 is 12 in base 3, written as a six-trit block.
    """

    assert binary_to_trits(b"\x05").tolist() == [0, 0, 0, 0, 1, 2]
    assert trits_to_binary(np.array([0, 0, 0, 0, 1, 2]), 1) == b"\x05"


def test_zero_block(transcoder: TritBlockTranscoder):
    trits = transcoder.binary_to_trits(bytes(19))

    assert trits.tolist() == [0] * 96


def test_max_block_fits(transcoder: TritBlockTranscoder):
    data = b"\xff" * 19

    assert transcoder.trits_to_binary(transcoder.binary_to_trits(data), 19) == data


def test_empty_input(transcoder: TritBlockTranscoder):
    assert len(transcoder.binary_to_trits(b"")) == 0
    assert transcoder.trits_to_binary(np.zeros(0, dtype=np.uint8), 0) == b""


@pytest.mark.parametrize(
    "byte_length, expected",
    [(0, 0), (1, 6), (2, 11), (19, 96), (20, 102), (38, 192)],
)
def test_trit_length(transcoder: TritBlockTranscoder, byte_length: int, expected: int):
    assert transcoder.trit_length(byte_length) == expected


def test_every_single_byte():
    transcoder = TritBlockTranscoder(TritBlockCodecParams(block_bytes=1))
    data = bytes(range(256))

    trits = transcoder.binary_to_trits(data)

    assert len(trits) == 256 * 6
    for value in range(256):
        digits = trits[6 * value : 6 * value + 6].tolist()
        assert sum(d * 3 ** (5 - i) for i, d in enumerate(digits)) == value
    assert transcoder.trits_to_binary(trits, 256) == data


def test_round_trip(transcoder: TritBlockTranscoder, rng: np.random.Generator):
    """
    10,000 random byte strings of 0 to 4096 bytes come back unchanged.

    Args:
        transcoder (fixture): Default transcoder.
        rng (fixture): Seeded generator.
    """

    for _ in range(10_000):
        length = int(rng.integers(0, 4097))
        data = rng.integers(0, 256, size=length, dtype=np.uint8).tobytes()
        trits = transcoder.binary_to_trits(data)

        assert len(trits) == transcoder.trit_length(length)
        assert transcoder.trits_to_binary(trits, length) == data


def test_expansion_factor():
    assert expansion_factor() == pytest.approx(1.2632, abs=1e-4)
    assert expansion_factor(TritBlockCodecParams(block_bytes=1)) == 1.5
    assert expansion_factor() > IDEAL_EXPANSION


def test_measured_expansion(transcoder: TritBlockTranscoder, rng: np.random.Generator):
    data = rng.integers(0, 256, size=64 * 1024, dtype=np.uint8).tobytes()

    measured = transcoder.measured_expansion(data)

    assert measured == pytest.approx(transcoder.expansion_factor(), rel=0.005)


def test_overflowing_block_is_corruption():
    """
    Six trits of value 2 exceed one byte.
    """

    with pytest.raises(BlockValueOverflowException) as exc_info:
        trits_to_binary(np.full(6, 2), 1)

    assert isinstance(exc_info.value, CorruptionException)


def test_trit_count_mismatch(transcoder: TritBlockTranscoder):
    with pytest.raises(InvalidArgumentException):
        transcoder.trits_to_binary(np.zeros(5, dtype=np.uint8), 1)


def test_trit_out_of_domain(transcoder: TritBlockTranscoder):
    with pytest.raises(TritDomainException):
        transcoder.trits_to_binary(np.array([0, 0, 0, 0, 3, 0]), 1)
