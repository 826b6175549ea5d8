from enum import Enum


class ExtendedEnum(Enum):

    @classmethod
    def get_list(cls):
        """
        Return a list of values from the enum class.
        """

        return list(cls)

    @classmethod
    def get_values(cls) -> list:
        """
        Return the raw values of every member, in declaration order.
        """

        return [member.value for member in cls]


class BitPair(int, ExtendedEnum):
    """One of the four 2-bit patterns; the value is the pattern read as an integer."""

    P00 = 0
    P01 = 1
    P10 = 2
    P11 = 3

    @property
    def label(self) -> str:
        """
        The pattern as two binary digits, e.g. "10".
        """

        return format(self.value, "02b")

    @property
    def high_bit(self) -> int:
        return self.value >> 1

    @property
    def low_bit(self) -> int:
        return self.value & 1

    @classmethod
    def from_label(cls, label: str) -> "BitPair":
        """
        Parses a two-digit binary label.

        Args:
            label: One of "00", "01", "10", "11".

        Returns:
            BitPair: The matching pair.

        Raises:
            ValueError: If the label is not a 2-bit pattern.
        """

        if len(label) != 2 or any(char not in "01" for char in label):
            raise ValueError(f"Invalid bit-pair label: {label!r}")

        return cls(int(label, 2))


class Mapping(ExtendedEnum):
    BALANCED = "balanced"
    UNSIGNED = "unsigned"

    @property
    def domain(self) -> tuple[int, int, int]:
        """
        The three trit values of the mapping in ascending order.
        """

        if self is Mapping.BALANCED:
            return (-1, 0, 1)

        return (0, 1, 2)

    @property
    def offset(self) -> int:
        """
        The value subtracted from a trit to obtain its rank in the domain.
        """

        return self.domain[0]


class Variant(ExtendedEnum):
    SINGLE = "single"
    DUAL = "dual"


class EventKind(ExtendedEnum):
    DATA = "data"
    BOUNDARY = "boundary"


class Namespace(ExtendedEnum):
    A = "A"
    B = "B"


class ExitCode(int, ExtendedEnum):
    OK = 0
    INTERNAL_ERROR = 1
    USAGE_ERROR = 2
    PARSE_ERROR = 3
    ARGUMENT_ERROR = 4
    CORRUPTION_ERROR = 5
