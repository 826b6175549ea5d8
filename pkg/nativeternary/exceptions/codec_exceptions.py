from nativeternary.exceptions.base_codec_exception import (
    ContainerParseException,
    InvalidArgumentException,
)


class TritDomainException(InvalidArgumentException):
    def __init__(self, value: int, domain: tuple[int, ...]):
        self.value = value
        self.domain = domain

        super().__init__(f"Trit value {value} is outside the domain {domain}.")


class BoundaryLevelException(InvalidArgumentException):
    def __init__(self, level: int):
        self.level = level

        super().__init__(f"Boundary level must be at least 1, got {level}.")


class AdjacentBoundaryException(InvalidArgumentException):
    def __init__(self, index: int):
        self.index = index

        super().__init__(
            f"Boundary events at positions {index - 1} and {index} are adjacent; "
            "coalesce them into one boundary of the summed level."
        )


class DelimiterPairException(InvalidArgumentException):
    def __init__(self, pair_label: str):
        super().__init__(f"Pair {pair_label} is the delimiter and carries no trit.")


class SchemeConflictException(InvalidArgumentException):
    def __init__(self, detail: str):
        super().__init__(f"Conflicting scheme options: {detail}")


class PairCountException(InvalidArgumentException):
    def __init__(self, pair_count: int, byte_length: int):
        self.pair_count = pair_count
        self.byte_length = byte_length

        super().__init__(
            f"Pair count {pair_count} does not fit in {byte_length} bytes."
        )


class EventTextParseException(ContainerParseException):
    def __init__(self, token: str, reason: str):
        self.token = token

        super().__init__(f"Cannot parse token {token!r}: {reason}")
