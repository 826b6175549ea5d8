import numpy as np
import pytest

from nativeternary.exceptions.base_codec_exception import InvalidArgumentException
from nativeternary.exceptions.channel_exceptions import FlipPositionException
from nativeternary.schemas import SchemeConfig
from nativeternary.services.channel import (
    ChannelSimulator,
    classify,
    corrupt_container,
    inject,
    vulnerability_rate,
)
from nativeternary.services.codec import TernaryCodec, decode, encode
from nativeternary.services.container import (
    ContainerService,
    pack_model,
    unpack_model,
    write_container,
)
from nativeternary.utils.dataclasses_utils import CorruptionSpec, Event, PairBuffer
from nativeternary.utils.enums import BitPair, Mapping

UNSIGNED = SchemeConfig(mapping=Mapping.UNSIGNED)


def corrupt_events(events: list[Event], config: SchemeConfig, *positions: int):
    """
    Encodes events, flips the given bits and classifies the result.
    """

    buffer = encode(events, config)
    spec = CorruptionSpec.at(*positions)
    corrupted = inject(buffer, spec, config)
    flipped = sorted({position // 2 for position in positions})
    return classify(events, decode(corrupted, config), flipped, config)


def test_flip_low_bit_of_pair_10():
    buffer = inject(PairBuffer(b"\x80", 1), CorruptionSpec.at(1))

    assert buffer.to_pairs().tolist() == [BitPair.P11]


def test_empty_flip_set(codec: TernaryCodec, table_events: list[Event]):
    buffer = codec.encode(table_events)

    assert inject(buffer, CorruptionSpec.at()) == buffer


def test_involution(rng: np.random.Generator):
    """
    Flipping the same bits twice restores the buffer.

    Args:
        rng (fixture): Seeded generator.
    """

    simulator = ChannelSimulator()
    for seed in range(50):
        pairs = rng.integers(0, 4, size=int(rng.integers(1, 100)), dtype=np.uint8)
        buffer = PairBuffer.from_pairs(pairs)
        spec = CorruptionSpec.random(int(rng.integers(0, buffer.bit_count + 1)), seed)

        once = simulator.inject(buffer, spec)

        assert once.pair_count == buffer.pair_count
        assert simulator.inject(once, spec) == buffer


def test_repeated_position_cancels():
    buffer = PairBuffer(b"\x1b\xc0", 5)

    assert inject(buffer, CorruptionSpec.at(3, 3)) == buffer


def test_random_spec_is_deterministic():
    simulator = ChannelSimulator()
    buffer = PairBuffer(bytes(64), 256)

    first = simulator.resolve_positions(CorruptionSpec.random(20, 7), buffer.bit_count)
    second = simulator.resolve_positions(CorruptionSpec.random(20, 7), buffer.bit_count)

    assert np.array_equal(first, second)
    assert len(np.unique(first)) == 20


@pytest.mark.parametrize(
    "spec", [CorruptionSpec.at(10), CorruptionSpec.at(-1), CorruptionSpec.random(11, 0)]
)
def test_invalid_positions(spec: CorruptionSpec):
    with pytest.raises(FlipPositionException) as exc_info:
        inject(PairBuffer(b"\x1b\xc0", 5), spec)

    assert isinstance(exc_info.value, InvalidArgumentException)


def test_unsigned_two_becomes_boundary():
    """
    Unsigned value 2 is pair 10; its low bit makes the delimiter 11.
    """

    events = [Event.data(0), Event.data(2), Event.data(1)]

    report = corrupt_events(events, UNSIGNED, 3)

    assert report.false_boundaries == 1
    assert report.value_flips == 0
    assert report.lost_or_split_boundaries == 0
    assert report.resync_events == 1
    assert report.mean_resync_distance == 1.0


def test_delimiter_00_false_boundary():
    config = SchemeConfig(delimiter=BitPair.P00)
    events = [Event.data(0), Event.data(-1), Event.data(0)]

    report = corrupt_events(events, config, 3)

    assert report.false_boundaries == 1
    assert report.corrupted_pairs == 1


def test_value_flip_inverts_sign():
    """
    High bit of pair 00 gives pair 10: -1 becomes +1.
    """

    events = [Event.data(-1), Event.data(0)]

    report = corrupt_events(events, SchemeConfig(), 0)

    assert report.value_flips == 1
    assert report.false_boundaries == 0
    assert report.sign_inversions == 1
    assert report.value_error_magnitude == 2
    assert report.resync_events == 1
    assert report.mean_resync_distance == 1.0


def test_lost_boundary():
    """
    D0 B2 D0 with the high bit of the first delimiter pair flipped decodes as
    D0 D0 B1 D0; the streams realign two events later.
    """

    events = [Event.data(0), Event.boundary(2), Event.data(0)]

    report = corrupt_events(events, SchemeConfig(), 2)

    assert report.lost_or_split_boundaries == 1
    assert report.resync_events == 1
    assert report.resync_distance_total == 2


def test_realigns_at_stream_end():
    """
    D0 D+1 with the last pair turned into a delimiter decodes as D0 B1; no
    event start follows, so the end of the stream is the realignment point.
    """

    events = [Event.data(0), Event.data(1)]

    report = corrupt_events(events, SchemeConfig(), 3)

    assert report.false_boundaries == 1
    assert report.resync_events == 1
    assert report.resynced_at_end == 1
    assert report.mean_resync_distance == 1.0


def test_no_corruption():
    report = classify([Event.data(0)], [Event.data(0)], [])

    assert report.corrupted_pairs == 0
    assert report.mean_resync_distance is None


def test_pair_count_mismatch():
    with pytest.raises(InvalidArgumentException):
        classify([Event.data(0)], [Event.data(0), Event.data(1)], [1])


def test_classes_are_complete(scheme_config: SchemeConfig, rng: np.random.Generator):
    """
    Every changed pair lands in exactly one class.

    Args:
        scheme_config (fixture): One of the eight single-delimiter configs.
        rng (fixture): Seeded generator.
    """

    simulator = ChannelSimulator(scheme_config)
    for seed in range(20):
        pairs = rng.integers(0, 4, size=400, dtype=np.uint8)
        _, report = simulator.corrupt(
            PairBuffer.from_pairs(pairs), CorruptionSpec.random(30, seed)
        )

        assert report.corrupted_pairs == (
            report.false_boundaries
            + report.lost_or_split_boundaries
            + report.value_flips
        )
        assert report.resync_events == report.corrupted_pairs
        assert report.resynced_at_end <= report.resync_events


def test_framing_is_mapping_independent(rng: np.random.Generator):
    """
    Balanced and unsigned mappings classify the same bit stream identically;
    only value statistics may differ.

    Args:
        rng (fixture): Seeded generator.
    """

    fields = (
        "corrupted_pairs",
        "false_boundaries",
        "lost_or_split_boundaries",
        "value_flips",
        "resync_events",
        "resynced_at_end",
        "resync_distance_total",
    )
    for delimiter in BitPair.get_list():
        buffer = PairBuffer.from_pairs(rng.integers(0, 4, size=500, dtype=np.uint8))
        spec = CorruptionSpec.random(40, int(delimiter))

        reports = [
            ChannelSimulator(SchemeConfig(delimiter=delimiter, mapping=mapping))
            .corrupt(buffer, spec)[1]
            .model_dump(include=set(fields))
            for mapping in Mapping.get_list()
        ]

        assert reports[0] == reports[1]


@pytest.mark.parametrize("delimiter", BitPair.get_list(), ids=lambda p: p.label)
def test_distance_one_census(delimiter: BitPair):
    """
    Both Hamming neighbours of the delimiter are data pairs, so 2 of the 6
    (data pair, bit) flips reach it.

    Args:
        delimiter: Delimiter pair.
    """

    census = ChannelSimulator(SchemeConfig(delimiter=delimiter)).distance_one_census()

    assert len(census) == 6
    assert sum(hit for *_, hit in census) == 2
    for pair, bit, flipped, hit in census:
        assert bin(pair ^ flipped).count("1") == 1
        assert (pair ^ flipped) == (0b10 if bit == 0 else 0b01)
        assert hit == (flipped == delimiter)


def test_vulnerability_rate_small():
    estimate = vulnerability_rate(UNSIGNED, 10, 10_000, seed=1)

    assert estimate.samples == 100_000
    assert estimate.rate == pytest.approx(1 / 3, abs=0.01)


def test_vulnerability_rate_no_samples():
    estimate = vulnerability_rate(SchemeConfig(), 5, 0, seed=0)

    assert estimate.samples == 0
    assert estimate.rate is None


def test_vulnerability_rate_needs_trials():
    with pytest.raises(InvalidArgumentException):
        vulnerability_rate(SchemeConfig(), 0, 10, seed=0)


@pytest.mark.slow
@pytest.mark.parametrize(
    "config",
    [UNSIGNED, SchemeConfig(delimiter=BitPair.P00)],
    ids=["11-unsigned", "00-balanced"],
)
def test_vulnerability_rate_million_flips(config: SchemeConfig):
    estimate = vulnerability_rate(config, 10, 100_000, seed=0)

    assert estimate.samples == 1_000_000
    assert estimate.rate == pytest.approx(1 / 3, abs=0.002)


def test_corrupt_container_keeps_header(
    table_events: list[Event], codec: TernaryCodec, default_config: SchemeConfig
):
    file = write_container(codec.encode(table_events), default_config)

    corrupted, report = corrupt_container(file, CorruptionSpec.at(3))

    assert corrupted[:22] == file[:22]
    assert ContainerService().read(corrupted).payload.pair_count == 5
    assert report.corrupted_pairs == 1


def test_corrupt_model_container_keeps_manifest(toy_manifest, toy_weights):
    weights = toy_weights.copy()
    weights[0] = -1
    file = pack_model(toy_manifest, weights)

    # low bit of the first weight: pair 00 becomes 01, -1 becomes 0
    corrupted, report = corrupt_container(file, CorruptionSpec.at(1))
    manifest, recovered = unpack_model(corrupted)

    assert report.value_flips == 1
    assert manifest == toy_manifest
    assert recovered[0] == 0
    assert np.array_equal(recovered[1:], weights[1:])
