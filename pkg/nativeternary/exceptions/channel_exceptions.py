from nativeternary.exceptions.base_codec_exception import InvalidArgumentException


class FlipPositionException(InvalidArgumentException):
    def __init__(self, position: int, bit_count: int):
        self.position = position
        self.bit_count = bit_count

        super().__init__(
            f"Bit position {position} is outside the payload range [0, {bit_count})."
        )
