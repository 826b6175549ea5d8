import struct

import numpy as np
import pytest

from nativeternary.exceptions.base_codec_exception import (
    ContainerParseException,
    InvalidArgumentException,
)
from nativeternary.exceptions.codec_exceptions import SchemeConflictException
from nativeternary.exceptions.container_exceptions import (
    BadMagicException,
    ReservedBitsException,
    TrailingDataException,
    TruncatedHeaderException,
    TruncatedPayloadException,
    UnsupportedVersionException,
)
from nativeternary.schemas import SchemeConfig
from nativeternary.services.codec import TernaryCodec
from nativeternary.services.container import (
    HEADER_SIZE,
    ContainerService,
    read_container,
    write_container,
)
from nativeternary.services.dual_starter import decode_dual, encode_dual
from nativeternary.utils.dataclasses_utils import DualSymbol, Event, PairBuffer
from nativeternary.utils.enums import BitPair, Mapping, Variant


def test_empty_payload_is_bare_header(default_config: SchemeConfig):
    file = write_container(PairBuffer(), default_config)

    assert len(file) == HEADER_SIZE == 22
    assert file[:4] == b"NTRN"
    assert file[4] == 1


def test_table_example_container(
    codec: TernaryCodec, default_config: SchemeConfig, table_events: list[Event]
):
    """
    Five pairs take two payload bytes after the 22-byte header; delimiter 11
    sets the two top flag bits.

    Args:
        codec (fixture): Primary-scheme codec.
        default_config (fixture): Delimiter 11, balanced.
        table_events (fixture): The event sequence.
    """

    file = write_container(codec.encode(table_events), default_config)

    assert len(file) == 24
    assert file[5] == 0b1100_0000
    assert struct.unpack_from("<Q", file, 6)[0] == 5
    assert file[22:] == b"\x1b\xc0"


@pytest.mark.parametrize(
    "config, transcoded, expected",
    [
        (SchemeConfig(delimiter=BitPair.P00), False, 0b0000_0000),
        (SchemeConfig(delimiter=BitPair.P01, mapping=Mapping.UNSIGNED), False, 0x60),
        (SchemeConfig(variant=Variant.DUAL), False, 0b1101_0000),
        (SchemeConfig(mapping=Mapping.UNSIGNED), True, 0b1110_1000),
    ],
)
def test_flags(
    container: ContainerService, config: SchemeConfig, transcoded: bool, expected: int
):
    flags = container.encode_flags(config, transcoded)

    assert flags == expected
    assert container.decode_flags(flags) == (config, transcoded)


def test_round_trip(scheme_config: SchemeConfig, rng: np.random.Generator):
    pairs = rng.integers(0, 4, size=int(rng.integers(0, 200)), dtype=np.uint8)
    payload = PairBuffer.from_pairs(pairs)

    config, decoded, transcoded_length = read_container(
        write_container(payload, scheme_config)
    )

    assert config == scheme_config
    assert decoded == payload
    assert transcoded_length is None


def test_dual_round_trip():
    config = SchemeConfig(variant=Variant.DUAL)
    symbols = [DualSymbol.from_text("A", "01"), DualSymbol.from_text("B", "1")]

    read_config, payload, _ = read_container(
        write_container(encode_dual(symbols, config), config)
    )

    assert read_config == config
    assert decode_dual(payload, read_config) == (symbols, 0)


@pytest.mark.parametrize(
    "starters",
    [(BitPair.P00, BitPair.P01), (BitPair.P11, BitPair.P10)],
)
def test_custom_starters_rejected(
    container: ContainerService, starters: tuple[BitPair, BitPair]
):
    """
    The header has no field for starters, so only 10,11 can be written.

    Args:
        container (fixture): Container service.
        starters: Starters other than 10,11.
    """

    config = SchemeConfig(variant=Variant.DUAL, starters=starters)
    payload = encode_dual([DualSymbol.from_text("A", "01")], config)

    with pytest.raises(SchemeConflictException) as exc_info:
        container.write_container(payload, config)

    assert isinstance(exc_info.value, InvalidArgumentException)


def test_transcoded_round_trip(container: ContainerService, rng: np.random.Generator):
    data = rng.integers(0, 256, size=1000, dtype=np.uint8).tobytes()
    config = SchemeConfig(mapping=Mapping.UNSIGNED)

    file = container.wrap_transcoded(data, config)

    assert container.read_header(file).is_transcoded
    assert container.read_header(file).original_byte_length == 1000
    assert container.unwrap_transcoded(file) == data


def test_unwrap_plain_container(container: ContainerService, default_config):
    with pytest.raises(InvalidArgumentException):
        container.unwrap_transcoded(write_container(PairBuffer(), default_config))


def test_bad_magic(container: ContainerService):
    """
    A GGUF file is not a container.
    """

    with pytest.raises(BadMagicException) as exc_info:
        container.read(b"GGUF" + bytes(30))

    assert isinstance(exc_info.value, ContainerParseException)


def test_truncated_header(container: ContainerService):
    with pytest.raises(TruncatedHeaderException):
        container.read(b"NTRN\x01\xc0")


def test_truncated_payload(container: ContainerService, default_config):
    header = container.write_header(PairBuffer(bytes(25), 100), default_config)

    with pytest.raises(TruncatedPayloadException):
        container.read(header + bytes(10))


def test_trailing_data(container: ContainerService, default_config):
    file = write_container(PairBuffer(b"\x1b", 4), default_config)

    with pytest.raises(TrailingDataException):
        container.read(file + b"\x00\x00")


def test_reserved_bits(container: ContainerService, default_config):
    file = bytearray(write_container(PairBuffer(), default_config))
    file[5] |= 0b0000_0001

    with pytest.raises(ReservedBitsException):
        container.read(bytes(file))


def test_unsupported_version(container: ContainerService, default_config):
    file = bytearray(write_container(PairBuffer(), default_config))
    file[4] = 2

    with pytest.raises(UnsupportedVersionException):
        container.read(bytes(file))
