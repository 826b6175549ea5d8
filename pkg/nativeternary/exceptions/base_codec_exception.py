from abc import ABC


class BaseCodecException(ABC, Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class InvalidArgumentException(BaseCodecException):
    """A caller supplied a value outside an operation's contract."""


class ContainerParseException(BaseCodecException):
    """Input bytes or text do not follow the expected layout."""


class CorruptionException(BaseCodecException):
    """Well-formed input whose content contradicts its own metadata."""
