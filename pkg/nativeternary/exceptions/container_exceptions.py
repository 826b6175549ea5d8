from nativeternary.exceptions.base_codec_exception import (
    ContainerParseException,
    CorruptionException,
)


class BadMagicException(ContainerParseException):
    def __init__(self, magic: bytes):
        self.magic = magic

        super().__init__(f"Not a NativeTernary container (magic {magic!r}).")


class UnsupportedVersionException(ContainerParseException):
    def __init__(self, version: int):
        self.version = version

        super().__init__(f"Unsupported container version {version}.")


class ReservedBitsException(ContainerParseException):
    def __init__(self, scheme_flags: int):
        self.scheme_flags = scheme_flags

        super().__init__(
            f"Reserved scheme flag bits are set (flags 0x{scheme_flags:02X})."
        )


class TruncatedPayloadException(ContainerParseException):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual

        super().__init__(
            f"Payload truncated: {expected} bytes declared, {actual} bytes present."
        )


class TrailingDataException(ContainerParseException):
    def __init__(self, extra: int):
        self.extra = extra

        super().__init__(f"{extra} unexpected bytes follow the container payload.")


class ManifestParseException(ContainerParseException):
    def __init__(self, reason: str):
        super().__init__(f"Invalid model manifest: {reason}")


class BlockValueOverflowException(CorruptionException):
    def __init__(self, block_index: int, block_bytes: int):
        self.block_index = block_index

        super().__init__(
            f"Trit block {block_index} encodes a value that does not fit "
            f"in {block_bytes} bytes."
        )


class SegmentationMismatchException(CorruptionException):
    def __init__(self, reason: str):
        super().__init__(f"Boundary segmentation disagrees with manifest: {reason}")


class TruncatedHeaderException(ContainerParseException):
    def __init__(self, actual: int, expected: int):
        self.actual = actual
        self.expected = expected

        super().__init__(
            f"Container header needs {expected} bytes, only {actual} present."
        )
