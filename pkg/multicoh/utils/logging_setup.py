"""
Logging setup for the command-line tool.

Reports are the program output and go to stdout; log records go to stderr and,
optionally, to a rotating file.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler

from multicoh.config.models import LoggingConfig


LOG_FORMAT = "[%(asctime)s] %(levelname)s [%(name)s]: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(config: LoggingConfig, verbose: bool = False) -> None:
    """
    Configure the root logger.

    Args:
        config: Logging configuration.
        verbose: Force DEBUG regardless of the configured level.
    """
    level = "DEBUG" if verbose else config.level

    root = logging.getLogger()
    root.setLevel(level)
    root.handlers.clear()

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setLevel(level)
    stderr_handler.setFormatter(formatter)
    root.addHandler(stderr_handler)

    if config.file:
        try:
            file_handler = RotatingFileHandler(
                config.file,
                maxBytes=10 * 1024 * 1024,  # 10 MB
                backupCount=5,
                encoding="utf-8"
            )
        except IOError as e:
            root.error(f"Failed to create log file {config.file}: {e}")
        else:
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            root.addHandler(file_handler)
            root.info(f"Logging to file: {config.file}")

    root.debug(f"Logging initialized at level: {level}")
