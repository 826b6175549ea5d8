import logging
import sys

from nativeternary.config import settings

LOG_FORMAT = "%(levelname)-9s %(asctime)s - %(name)s - %(message)s"


def get_logger(name: str, log_level: str = settings.log_level) -> logging.Logger:
    """Get a logger with the specified name and log level.

    Records go to standard error; standard output is reserved for command data.

    Args:
        name: The name of the logger.
        log_level: The log level for the logger.

    Returns:
        logging.Logger: The logger object.
    """
    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    if logger.handlers:
        return logger

    formatter = logging.Formatter(LOG_FORMAT)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)

    logger.addHandler(stream_handler)
    return logger


def set_log_level(log_level: str) -> None:
    """
    Applies a log level to every logger created through get_logger.

    Args:
        log_level: The new log level name.
    """

    for logger in logging.Logger.manager.loggerDict.values():
        if isinstance(logger, logging.Logger) and logger.name.startswith(
            settings.app_name
        ):
            logger.setLevel(log_level)
