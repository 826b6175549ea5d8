import argparse
import sys
from typing import BinaryIO, Optional, Sequence

from nativeternary.commands.common import Streams
from nativeternary.config import settings
from nativeternary.exception_handler import handle_exception
from nativeternary.exceptions.cli_exceptions import UsageException
from nativeternary.logger import get_logger, set_log_level
from nativeternary.routes import command_list
from nativeternary.utils.enums import ExitCode

logger = get_logger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting on bad input."""

    def error(self, message: str):
        raise UsageException(f"{self.prog}: {message}")


def build_parser() -> CommandParser:
    parser = CommandParser(
        prog=settings.app_name,
        description="NativeTernary codec: 2-bit-pair ternary framing with "
        "run-length boundary markers.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log debug output to stderr"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    for route in command_list:
        command = route["command"]
        subparser = subparsers.add_parser(
            command.NAME,
            help=command.HELP,
            description=command.HELP,
            aliases=route.get("aliases", []),
        )
        command.add_arguments(subparser)
        subparser.set_defaults(handler=command.handle)

    return parser


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[BinaryIO] = None,
    stdout: Optional[BinaryIO] = None,
    stderr: Optional[BinaryIO] = None,
) -> int:
    """
    Runs one command.

    Args:
        argv: Arguments without the program name (default sys.argv[1:]).
        stdin: Binary input stream (default sys.stdin.buffer).
        stdout: Binary output stream (default sys.stdout.buffer).
        stderr: Binary stream for error lines and reports
            (default sys.stderr.buffer).

    Returns:
        int: The exit code.
    """

    streams = Streams(
        stdin=stdin or sys.stdin.buffer,
        stdout=stdout or sys.stdout.buffer,
        stderr=stderr or sys.stderr.buffer,
    )

    try:
        args = build_parser().parse_args(argv)
        set_log_level("DEBUG" if args.verbose else settings.log_level)
        logger.debug("running %s", args.command)
        args.handler(args, streams)
    except SystemExit as e:
        # --help exits through argparse
        return int(e.code or 0)
    except Exception as e:  # pylint: disable=broad-exception-caught
        return handle_exception(e, streams.stderr)

    streams.stdout.flush()
    return ExitCode.OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
