"""Logging setup for command-line runs."""

import logging
import sys
from contextlib import contextmanager

LEVELS = {0: logging.WARNING, 1: logging.INFO}
FORMAT = '%(levelname)s %(name)s: %(message)s'
PACKAGE_LOGGER = 'src'


def configure_logging(verbosity: int = 0) -> logging.Handler:
    """Route the package loggers to the current standard error.

    Args:
        verbosity: 0 for warnings, 1 for info, 2 or more for debug.

    Returns:
        The installed handler.
    """
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(LEVELS.get(verbosity, logging.DEBUG))
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(FORMAT))
    logger.addHandler(handler)
    logger.propagate = False
    return handler


@contextmanager
def logging_to_stderr(verbosity: int = 0):
    """Install the handler for the duration of one job."""
    handler = configure_logging(verbosity)
    try:
        yield handler
    finally:
        logger = logging.getLogger(PACKAGE_LOGGER)
        logger.removeHandler(handler)
        logger.propagate = True
