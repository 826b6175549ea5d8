import math
from typing import Annotated, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    StringConstraints,
    computed_field,
    field_validator,
    model_validator,
)

from nativeternary.utils.enums import BitPair, Mapping, Variant

NameStr = Annotated[str, StringConstraints(min_length=1, strip_whitespace=True)]


def minimal_trits_per_block(block_bytes: int) -> int:
    """
    Smallest trit count t with 3**t >= 256**block_bytes.

    Args:
        block_bytes: Block size in bytes.

    Returns:
        int: The minimal trit count (exact integer arithmetic).
    """

    limit = 256**block_bytes
    trits, capacity = 0, 1
    while capacity < limit:
        capacity *= 3
        trits += 1
    return trits


class Base(BaseModel):
    model_config = ConfigDict(frozen=True)


class SchemeConfig(Base):
    delimiter: BitPair = BitPair.P11
    mapping: Mapping = Mapping.BALANCED
    variant: Variant = Variant.SINGLE
    starters: tuple[BitPair, BitPair] = (BitPair.P10, BitPair.P11)

    @field_validator("starters")
    @classmethod
    def starters_must_differ(cls, value: tuple[BitPair, BitPair]):
        """
        Rejects a dual-starter configuration that reuses one pair twice.
        """

        if value[0] == value[1]:
            raise ValueError("namespace starters must be two distinct pairs")
        return value

    @classmethod
    def from_options(
        cls,
        delimiter: str = "11",
        mapping: str = "balanced",
        variant: str = "single",
    ) -> "SchemeConfig":
        """
        Builds a configuration from the textual option values used by the CLI.

        Args:
            delimiter: Two-digit pair label.
            mapping: "balanced" or "unsigned".
            variant: "single" or "dual".

        Returns:
            SchemeConfig: The configuration.
        """

        return cls(
            delimiter=BitPair.from_label(delimiter),
            mapping=Mapping(mapping),
            variant=Variant(variant),
        )

    @property
    def is_dual(self) -> bool:
        return self.variant is Variant.DUAL

    def describe(self) -> str:
        if self.is_dual:
            return (
                f"variant=dual starters={self.starters[0].label},"
                f"{self.starters[1].label}"
            )
        return (
            f"variant=single delimiter={self.delimiter.label} "
            f"mapping={self.mapping.value}"
        )


class TritBlockCodecParams(Base):
    block_bytes: PositiveInt = 19
    trits_per_block: int = 0

    @model_validator(mode="before")
    @classmethod
    def fill_trit_count(cls, data):
        """
        Derives the minimal trit count when none is given.
        """

        if isinstance(data, dict) and data.get("trits_per_block") is None:
            block_bytes = data.get("block_bytes", 19)
            if isinstance(block_bytes, int) and block_bytes > 0:
                data = {
                    **data,
                    "trits_per_block": minimal_trits_per_block(block_bytes),
                }
        return data

    @model_validator(mode="after")
    def check_trit_count(self):
        """
        Checks the trit count is injective and wastes no trit.
        """

        minimal = minimal_trits_per_block(self.block_bytes)

        if self.trits_per_block != minimal:
            raise ValueError(
                f"{self.block_bytes}-byte blocks need exactly {minimal} trits, "
                f"got {self.trits_per_block}"
            )
        return self


class ContainerHeader(Base):
    magic: bytes = b"NTRN"
    version: int = 1
    scheme_flags: int = 0
    payload_pair_count: NonNegativeInt = 0
    original_byte_length: NonNegativeInt = 0

    @property
    def is_transcoded(self) -> bool:
        return bool(self.scheme_flags & 0b0000_1000)


class TensorSpec(Base):
    name: NameStr
    elements: PositiveInt
    shape: Optional[list[PositiveInt]] = None

    @model_validator(mode="after")
    def shape_matches_elements(self):
        """
        A declared shape must multiply out to the element count.
        """

        if self.shape is not None and math.prod(self.shape) != self.elements:
            raise ValueError(
                f"tensor {self.name}: shape {self.shape} does not hold "
                f"{self.elements} elements"
            )
        return self


class LayerSpec(Base):
    name: NameStr
    tensors: list[TensorSpec] = Field(min_length=1)

    @field_validator("tensors")
    @classmethod
    def tensor_names_unique(cls, value: list[TensorSpec]):
        names = [tensor.name for tensor in value]
        if len(set(names)) != len(names):
            raise ValueError("tensor names must be unique within a layer")
        return value


class ModelManifest(Base):
    layers: list[LayerSpec] = Field(default_factory=list)

    @field_validator("layers")
    @classmethod
    def layer_names_unique(cls, value: list[LayerSpec]):
        names = [layer.name for layer in value]
        if len(set(names)) != len(names):
            raise ValueError("layer names must be unique")
        return value

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    @property
    def tensor_count(self) -> int:
        return sum(len(layer.tensors) for layer in self.layers)

    @property
    def weight_count(self) -> int:
        return sum(tensor.elements for tensor in self.iter_tensors())

    def iter_tensors(self):
        """
        Yields every tensor in manifest order.
        """

        for layer in self.layers:
            yield from layer.tensors


class CorruptionReport(Base):
    corrupted_pairs: NonNegativeInt = 0
    false_boundaries: NonNegativeInt = 0
    lost_or_split_boundaries: NonNegativeInt = 0
    value_flips: NonNegativeInt = 0
    value_error_magnitude: NonNegativeInt = 0
    sign_inversions: NonNegativeInt = 0
    resync_events: NonNegativeInt = 0
    resynced_at_end: NonNegativeInt = 0
    resync_distance_total: NonNegativeInt = 0

    @computed_field
    @property
    def mean_resync_distance(self) -> Optional[float]:
        """
        Mean events to realignment, None if nothing was corrupted.
        """

        if self.resync_events:
            return self.resync_distance_total / self.resync_events
        return None

    def merge(self, other: "CorruptionReport") -> "CorruptionReport":
        """
        Sums two reports; the result does not depend on merge order.
        """

        counts = {
            name: getattr(self, name) + getattr(other, name)
            for name in type(self).model_fields
        }
        return CorruptionReport(**counts)


class VulnerabilityEstimate(Base):
    samples: NonNegativeInt
    false_boundaries: NonNegativeInt

    @computed_field
    @property
    def rate(self) -> Optional[float]:
        if not self.samples:
            return None
        return self.false_boundaries / self.samples


class TextShapeParams(Base):
    chars_per_word: PositiveFloat = 5.0
    words_per_sentence: PositiveFloat = 20.0
    sentences_per_paragraph: PositiveFloat = 8.0
    word_level: PositiveInt = 1
    sentence_level: PositiveInt = 2
    paragraph_level: PositiveInt = 3

    @model_validator(mode="after")
    def levels_ascend(self):
        if not self.word_level < self.sentence_level < self.paragraph_level:
            raise ValueError("levels must satisfy word < sentence < paragraph")
        return self


class StorageModel(Base):
    name: NameStr
    bits_per_weight: PositiveFloat
    per_tensor_header_bytes: NonNegativeFloat = 0.0


class StorageEstimate(Base):
    name: str
    bits_per_weight: float
    payload_bytes: float
    header_bytes: float
    total_bytes: float
    size_ratio: float
    overhead_ratio: Optional[float] = None


class BenchResult(Base):
    scale: PositiveInt
    seed: int
    encoded_bytes: NonNegativeInt
    encode_seconds: NonNegativeFloat
    decode_seconds: NonNegativeFloat

    @computed_field
    @property
    def encode_mbps(self) -> float:
        return self.scale / 1e6 / self.encode_seconds if self.encode_seconds else 0.0

    @computed_field
    @property
    def decode_mbps(self) -> float:
        return self.scale / 1e6 / self.decode_seconds if self.decode_seconds else 0.0


class FuzzSummary(Base):
    buffers: NonNegativeInt = 0
    pairs_decoded: NonNegativeInt = 0
    events: NonNegativeInt = 0
    boundaries: NonNegativeInt = 0
    containers_rejected: NonNegativeInt = 0
    containers_accepted: NonNegativeInt = 0
    decode_seconds: NonNegativeFloat = 0.0
