import struct
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import ValidationError

from nativeternary.config import Settings, settings
from nativeternary.exceptions.base_codec_exception import InvalidArgumentException
from nativeternary.exceptions.codec_exceptions import SchemeConflictException
from nativeternary.exceptions.container_exceptions import (
    BadMagicException,
    ManifestParseException,
    ReservedBitsException,
    SegmentationMismatchException,
    TrailingDataException,
    TruncatedHeaderException,
    TruncatedPayloadException,
    UnsupportedVersionException,
)
from nativeternary.logger import get_logger
from nativeternary.schemas import ContainerHeader, ModelManifest, SchemeConfig
from nativeternary.services.base import BaseService
from nativeternary.services.codec import TernaryCodec
from nativeternary.services.transcode import TritBlockTranscoder
from nativeternary.utils.dataclasses_utils import PairBuffer
from nativeternary.utils.enums import BitPair, Mapping, Variant
from nativeternary.utils.pair_utils import required_bytes

logger = get_logger(__name__)

MAGIC = b"NTRN"
VERSION = 1
HEADER = struct.Struct("<4sBBQQ")
HEADER_SIZE = HEADER.size
MANIFEST_LENGTH = struct.Struct("<I")

DELIMITER_SHIFT = 6
MAPPING_BIT = 0b0010_0000
VARIANT_BIT = 0b0001_0000
TRANSCODED_BIT = 0b0000_1000
RESERVED_BITS = 0b0000_0111
HEADER_STARTERS = (BitPair.P10, BitPair.P11)

TENSOR_BOUNDARY_LEVEL = 2
LAYER_BOUNDARY_LEVEL = 3


@dataclass(frozen=True)
class ContainerContents:
    header: ContainerHeader
    config: SchemeConfig
    payload: PairBuffer
    transcoded_length: Optional[int] = None
    manifest: Optional[ModelManifest] = None


class ContainerService(BaseService):
    """Reads and writes the 22-byte-header container and its model variant."""

    def encode_flags(self, config: SchemeConfig, transcoded: bool = False) -> int:
        """
        Packs a scheme configuration into the scheme_flags byte.

        Args:
            config: The scheme configuration.
            transcoded: Whether the payload holds transcoded binary data.

        Returns:
            int: The flags byte.

        Raises:
            SchemeConflictException: If a dual-starter configuration uses
                starters other than 10 and 11, which the header cannot record.
        """

        if config.is_dual and config.starters != HEADER_STARTERS:
            raise SchemeConflictException(
                "the container header only records dual-starter payloads "
                "with starters 10,11"
            )

        flags = int(config.delimiter) << DELIMITER_SHIFT
        if config.mapping is Mapping.UNSIGNED:
            flags |= MAPPING_BIT
        if config.variant is Variant.DUAL:
            flags |= VARIANT_BIT
        if transcoded:
            flags |= TRANSCODED_BIT
        return flags

    def decode_flags(self, flags: int) -> tuple[SchemeConfig, bool]:
        """
        Inverse of encode_flags.

        Raises:
            ReservedBitsException: If any reserved bit is set.
        """

        if flags & RESERVED_BITS:
            raise ReservedBitsException(flags)

        config = SchemeConfig(
            delimiter=BitPair(flags >> DELIMITER_SHIFT),
            mapping=Mapping.UNSIGNED if flags & MAPPING_BIT else Mapping.BALANCED,
            variant=Variant.DUAL if flags & VARIANT_BIT else Variant.SINGLE,
        )
        return config, bool(flags & TRANSCODED_BIT)

    def write_header(
        self,
        payload: PairBuffer,
        config: SchemeConfig,
        transcoded_length: Optional[int] = None,
    ) -> bytes:
        flags = self.encode_flags(config, transcoded_length is not None)
        return HEADER.pack(
            MAGIC, VERSION, flags, payload.pair_count, transcoded_length or 0
        )

    def write_container(
        self,
        payload: PairBuffer,
        config: SchemeConfig,
        transcoded_length: Optional[int] = None,
    ) -> bytes:
        """
        Serializes a payload: header, then the bytes holding the pairs.

        Args:
            payload: Encoded pairs.
            config: Scheme the payload was encoded with.
            transcoded_length: Original byte length when the payload holds
                transcoded binary data, otherwise None.

        Returns:
            bytes: The container file.
        """

        return self.write_header(payload, config, transcoded_length) + payload.payload

    def write_model_container(
        self, payload: PairBuffer, config: SchemeConfig, manifest: ModelManifest
    ) -> bytes:
        """
        Serializes a model payload with its manifest between header and payload.
        """

        manifest_bytes = serialize_manifest(manifest)
        return b"".join(
            [
                self.write_header(payload, config),
                MANIFEST_LENGTH.pack(len(manifest_bytes)),
                manifest_bytes,
                payload.payload,
            ]
        )

    def read_header(self, file: bytes) -> ContainerHeader:
        """
        Parses and validates the fixed header.

        Raises:
            BadMagicException: If the magic bytes are wrong.
            TruncatedHeaderException: If the file is shorter than a header.
            UnsupportedVersionException: If the version is not 1.
            ReservedBitsException: If reserved flag bits are set.
        """

        if len(file) >= len(MAGIC) and file[: len(MAGIC)] != MAGIC:
            raise BadMagicException(bytes(file[: len(MAGIC)]))

        if len(file) < HEADER_SIZE:
            raise TruncatedHeaderException(len(file), HEADER_SIZE)

        magic, version, flags, pair_count, original_length = HEADER.unpack_from(file)

        if version != VERSION:
            raise UnsupportedVersionException(version)

        if flags & RESERVED_BITS:
            raise ReservedBitsException(flags)

        return ContainerHeader(
            magic=magic,
            version=version,
            scheme_flags=flags,
            payload_pair_count=pair_count,
            original_byte_length=original_length,
        )

    def read(self, file: bytes) -> ContainerContents:
        """
        Parses a container, with or without a manifest section.

        A manifest section is present when the bytes after the header start
        with a 4-byte length whose JSON document fits before the payload.

        Args:
            file: The container bytes.

        Returns:
            ContainerContents: Header, scheme, payload and optional extras.

        Raises:
            TruncatedPayloadException: If fewer payload bytes are present
                than the pair count needs.
            TrailingDataException: If unexplained bytes follow the payload.
        """

        header = self.read_header(file)
        config, transcoded = self.decode_flags(header.scheme_flags)
        payload_size = required_bytes(header.payload_pair_count)
        body = bytes(file[HEADER_SIZE:])

        manifest = None
        if len(body) != payload_size and _has_manifest_section(body):
            (manifest_size,) = MANIFEST_LENGTH.unpack_from(body)
            manifest_end = MANIFEST_LENGTH.size + manifest_size
            manifest = parse_manifest(body[MANIFEST_LENGTH.size : manifest_end])
            body = body[manifest_end:]

        if len(body) < payload_size:
            raise TruncatedPayloadException(payload_size, len(body))

        if len(body) > payload_size:
            raise TrailingDataException(len(body) - payload_size)

        return ContainerContents(
            header=header,
            config=config,
            payload=PairBuffer(body, header.payload_pair_count),
            transcoded_length=header.original_byte_length if transcoded else None,
            manifest=manifest,
        )

    def read_container(
        self, file: bytes
    ) -> tuple[SchemeConfig, PairBuffer, Optional[int]]:
        """
        Inverse of write_container.

        Returns:
            tuple: Scheme, payload and the original byte length of a
                transcoded payload (None otherwise).
        """

        contents = self.read(file)
        return contents.config, contents.payload, contents.transcoded_length

    def wrap_transcoded(self, data: bytes, config: SchemeConfig) -> bytes:
        """
        Transcodes binary data to trits and stores them with the original length.
        """

        codec = TernaryCodec(config, self.settings)
        trits = TritBlockTranscoder(app_settings=self.settings).binary_to_trits(data)
        payload = codec.encode_trits(trits.astype(np.int64) + codec.offset)
        return self.write_container(payload, config, transcoded_length=len(data))

    def unwrap_transcoded(self, file: bytes) -> bytes:
        """
        Recovers the binary data of a transcoded container.

        Raises:
            InvalidArgumentException: If the container is not transcoded.
        """

        contents = self.read(file)
        if contents.transcoded_length is None:
            raise InvalidArgumentException("Container does not hold transcoded data.")

        codec = TernaryCodec(contents.config, self.settings)
        decoded = codec.decode_arrays(contents.payload)
        if decoded.is_boundary.any():
            raise SegmentationMismatchException(
                "transcoded payloads carry no boundaries"
            )

        trits = decoded.values - codec.offset
        transcoder = TritBlockTranscoder(app_settings=self.settings)
        return transcoder.trits_to_binary(trits, contents.transcoded_length)


class ModelPacker(BaseService):
    """Frames ternary model weights with tensor and layer boundaries.

    Tensors end with a level-2 boundary. The last tensor of a layer ends with
    one level-3 run instead, which reads as tensor end plus layer end and
    costs the same 6 bits as a separate 4-bit and 2-bit marker.
    """

    def __init__(
        self,
        config: SchemeConfig = SchemeConfig(),
        app_settings: Settings = settings,
    ):
        super().__init__(app_settings)
        self.config = config
        self.codec = TernaryCodec(config, app_settings)
        self.container = ContainerService(app_settings)

    def frame(self, manifest: ModelManifest, weights: np.ndarray) -> PairBuffer:
        """
        Encodes weights in manifest order with boundary runs after each tensor.

        Args:
            manifest: The model structure.
            weights: Flat trits in the active domain, tensor after tensor.

        Returns:
            PairBuffer: The framed payload.

        Raises:
            InvalidArgumentException: If the weight count does not match the
                manifest.
        """

        weights = np.asarray(weights, dtype=np.int64)
        if len(weights) != manifest.weight_count:
            raise InvalidArgumentException(
                f"Manifest declares {manifest.weight_count} weights, "
                f"{len(weights)} supplied."
            )

        elements = np.array(
            [tensor.elements for tensor in manifest.iter_tensors()], dtype=np.int64
        )
        levels = np.concatenate(
            [
                [TENSOR_BOUNDARY_LEVEL] * (len(layer.tensors) - 1)
                + [LAYER_BOUNDARY_LEVEL]
                for layer in manifest.layers
            ]
            or [[]]
        ).astype(np.int64)

        event_count = len(weights) + len(elements)
        boundary_positions = np.cumsum(elements) + np.arange(len(elements))

        is_boundary = np.zeros(event_count, dtype=bool)
        is_boundary[boundary_positions] = True

        values = np.empty(event_count, dtype=np.int64)
        values[is_boundary] = levels
        values[~is_boundary] = weights

        payload = self.codec.encode_arrays(is_boundary, values)
        logger.debug(
            "framed %d weights in %d tensors / %d layers into %d pairs",
            len(weights),
            manifest.tensor_count,
            manifest.layer_count,
            payload.pair_count,
        )
        return payload

    def pack_model(self, manifest: ModelManifest, weights: np.ndarray) -> bytes:
        """
        Builds a model container: header, manifest section, framed payload.
        """

        payload = self.frame(manifest, weights)
        return self.container.write_model_container(payload, self.config, manifest)

    @classmethod
    def unpack_model(
        cls, file: bytes, app_settings: Settings = settings
    ) -> tuple[ModelManifest, np.ndarray]:
        """
        Inverse of pack_model.

        Boundary runs re-segment the trit stream; level 2 closes a tensor,
        level 3 or more closes a tensor and its layer. The recovered
        segmentation must match the stored manifest.

        Args:
            file: A model container.

        Returns:
            tuple: The manifest and the flat trit array.

        Raises:
            ManifestParseException: If the container has no manifest.
            SegmentationMismatchException: If boundaries and manifest disagree.
        """

        contents = ContainerService(app_settings).read(file)
        if contents.manifest is None:
            raise ManifestParseException("container has no manifest section")

        codec = TernaryCodec(contents.config, app_settings)
        decoded = codec.decode_arrays(contents.payload)
        layers = segment_layers(decoded.is_boundary, decoded.values)
        expected = [
            [tensor.elements for tensor in layer.tensors]
            for layer in contents.manifest.layers
        ]

        if layers != expected:
            raise SegmentationMismatchException(
                f"payload holds layers {_summarize(layers)}, "
                f"manifest declares {_summarize(expected)}"
            )

        return contents.manifest, decoded.values[~decoded.is_boundary]


def segment_layers(is_boundary: np.ndarray, values: np.ndarray) -> list[list[int]]:
    """
    Splits a decoded model payload into per-layer lists of tensor sizes.

    Raises:
        SegmentationMismatchException: On a level-1 boundary, an empty tensor
            or weights after the final boundary.
    """

    boundary_index = np.flatnonzero(is_boundary)
    if len(is_boundary) and not is_boundary[-1]:
        raise SegmentationMismatchException("weights follow the final boundary")

    sizes = np.diff(boundary_index, prepend=-1) - 1
    layers: list[list[int]] = []
    tensors: list[int] = []

    for size, level in zip(sizes.tolist(), values[boundary_index].tolist()):
        if level < TENSOR_BOUNDARY_LEVEL:
            raise SegmentationMismatchException(f"unexpected level-{level} boundary")
        if size == 0:
            raise SegmentationMismatchException("empty tensor between boundaries")

        tensors.append(size)
        if level >= LAYER_BOUNDARY_LEVEL:
            layers.append(tensors)
            tensors = []

    if tensors:
        raise SegmentationMismatchException("last layer is never closed")

    return layers


def boundary_overhead(manifest: ModelManifest) -> int:
    """
    Bits spent on structure: 2 per layer plus 4 per tensor.
    """

    return 2 * manifest.layer_count + 4 * manifest.tensor_count


def serialize_manifest(manifest: ModelManifest) -> bytes:
    return manifest.model_dump_json(exclude_none=True).encode("utf-8")


def parse_manifest(document: bytes) -> ModelManifest:
    """
    Parses a manifest section.

    Raises:
        ManifestParseException: If the document is not a valid manifest.
    """

    try:
        return ModelManifest.model_validate_json(document)
    except ValidationError as e:
        raise ManifestParseException(str(e).splitlines()[0]) from e


def _has_manifest_section(body: bytes) -> bool:
    if len(body) <= MANIFEST_LENGTH.size:
        return False

    (manifest_size,) = MANIFEST_LENGTH.unpack_from(body)
    return (
        MANIFEST_LENGTH.size + manifest_size <= len(body)
        and body[MANIFEST_LENGTH.size : MANIFEST_LENGTH.size + 1] == b"{"
    )


def _summarize(layers: list[list[int]]) -> str:
    return f"{len(layers)} layers / {sum(map(len, layers))} tensors"


def write_container(
    payload: PairBuffer, config: SchemeConfig, transcoded_length: Optional[int] = None
) -> bytes:
    return ContainerService().write_container(payload, config, transcoded_length)


def read_container(file: bytes) -> tuple[SchemeConfig, PairBuffer, Optional[int]]:
    return ContainerService().read_container(file)


def pack_model(
    manifest: ModelManifest, weights: np.ndarray, config: SchemeConfig = SchemeConfig()
) -> bytes:
    return ModelPacker(config).pack_model(manifest, weights)


def unpack_model(file: bytes) -> tuple[ModelManifest, np.ndarray]:
    return ModelPacker.unpack_model(file)
