import argparse

from nativeternary.commands.common import (
    Streams,
    add_io_arguments,
    read_input,
    write_text,
)
from nativeternary.services.codec import (
    TernaryCodec,
    arrays_to_events,
    boundary_census,
)
from nativeternary.services.container import ContainerService
from nativeternary.services.dual_starter import DualStarterCodec
from nativeternary.utils.text_utils import format_report

NAME = "inspect"
HELP = "container header, boundary census and manifest summary"


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_io_arguments(parser)


def handle(args: argparse.Namespace, streams: Streams) -> None:
    contents = ContainerService.get_instance().read(read_input(args, streams))
    header, config = contents.header, contents.config

    fields: dict[str, object] = {
        "magic": header.magic.decode("ascii"),
        "version": header.version,
        "variant": config.variant.value,
    }
    if config.is_dual:
        fields["starters"] = " ".join(pair.label for pair in config.starters)
    else:
        fields["delimiter"] = config.delimiter.label
        fields["mapping"] = config.mapping.value

    fields["transcoded"] = "yes" if header.is_transcoded else "no"
    if header.is_transcoded:
        fields["original_byte_length"] = header.original_byte_length
    fields["pair_count"] = header.payload_pair_count
    fields["payload_bytes"] = len(contents.payload.payload)

    if config.is_dual:
        symbols, skipped = DualStarterCodec.get_instance(config).decode(
            contents.payload
        )
        fields["symbols"] = len(symbols)
        fields["skipped_pairs"] = skipped
    else:
        decoded = TernaryCodec.get_instance(config).decode_arrays(contents.payload)
        census = boundary_census(arrays_to_events(decoded))
        fields["data_events"] = int((~decoded.is_boundary).sum())
        fields["boundary_census"] = (
            " ".join(f"level{level}:{count}" for level, count in census.items())
            or "none"
        )
        fields["boundary_bits"] = sum(
            2 * level * count for level, count in census.items()
        )

    if contents.manifest is not None:
        fields["layers"] = contents.manifest.layer_count
        fields["tensors"] = contents.manifest.tensor_count
        fields["weights"] = contents.manifest.weight_count

    write_text(args, streams, format_report(fields))
