from typing import BinaryIO

from pydantic import ValidationError

from nativeternary.exceptions.base_codec_exception import (
    BaseCodecException,
    ContainerParseException,
    CorruptionException,
    InvalidArgumentException,
)
from nativeternary.exceptions.cli_exceptions import UsageException
from nativeternary.logger import get_logger
from nativeternary.utils.enums import ExitCode
from nativeternary.utils.types import ExceptionHandler

logger = get_logger(__name__)


def __report(stderr: BinaryIO, kind: str, exc: Exception) -> None:
    message = exc.message if isinstance(exc, BaseCodecException) else str(exc)
    stderr.write(f"{kind}: {message}\n".encode("utf-8"))


def usage_exception_handler(exc: Exception, stderr: BinaryIO) -> int:
    """
    Handles command lines that argparse rejected.

    Returns:
        int: The usage exit code.
    """

    __report(stderr, "usage error", exc)
    return ExitCode.USAGE_ERROR


def parse_exception_handler(exc: Exception, stderr: BinaryIO) -> int:
    """
    Handles malformed containers, manifests and event text.

    Returns:
        int: The parse-error exit code.
    """

    logger.debug("parse error: %s", exc)
    __report(stderr, "parse error", exc)
    return ExitCode.PARSE_ERROR


def argument_exception_handler(exc: Exception, stderr: BinaryIO) -> int:
    """
    Handles values outside an operation's contract, invalid option values
    and unreadable files.

    Returns:
        int: The argument-error exit code.
    """

    logger.debug("argument error: %s", exc)
    __report(stderr, "argument error", exc)
    return ExitCode.ARGUMENT_ERROR


def corruption_exception_handler(exc: Exception, stderr: BinaryIO) -> int:
    """
    Handles well-formed containers whose content contradicts their metadata.

    Returns:
        int: The corruption exit code.
    """

    logger.warning("corrupted input: %s", exc)
    __report(stderr, "corruption error", exc)
    return ExitCode.CORRUPTION_ERROR


def internal_exception_handler(exc: Exception, stderr: BinaryIO) -> int:
    """
    Handles anything no other handler claims.

    Returns:
        int: The internal-error exit code.
    """

    logger.exception(
        "Unhandled exception %s: %s", type(exc).__name__, exc, exc_info=exc
    )
    stderr.write(f"internal error: {exc}\n".encode("utf-8"))
    return ExitCode.INTERNAL_ERROR


exception_handlers: dict[type[Exception], ExceptionHandler] = {
    UsageException: usage_exception_handler,
    ContainerParseException: parse_exception_handler,
    InvalidArgumentException: argument_exception_handler,
    CorruptionException: corruption_exception_handler,
    ValidationError: argument_exception_handler,
    OSError: argument_exception_handler,
}


def handle_exception(exc: Exception, stderr: BinaryIO) -> int:
    """
    Dispatches an exception to the handler of its family.

    Args:
        exc: The raised exception.
        stderr: Binary stream for the one-line error message.

    Returns:
        int: The process exit code.
    """

    for exception_type, handler in exception_handlers.items():
        if isinstance(exc, exception_type):
            return handler(exc, stderr)

    return internal_exception_handler(exc, stderr)
