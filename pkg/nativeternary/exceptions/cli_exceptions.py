from nativeternary.exceptions.base_codec_exception import BaseCodecException


class UsageException(BaseCodecException):
    """The command line could not be parsed."""
