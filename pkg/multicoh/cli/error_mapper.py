"""
Map exceptions to process exit codes.

0 means every check passed, 1 that a check completed with violations, 2 that the input
could not be processed at all.
"""

from multicoh.config.loader import ConfigurationError
from multicoh.utils.exceptions import MulticohException


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2


def exit_code_for(exception: Exception) -> int:
    """
    Exit code for an exception raised while running a command.

    Raises:
        Exception: The exception itself, if it is not a multicoh or configuration error.
    """
    if isinstance(exception, (MulticohException, ConfigurationError)):
        return EXIT_INVALID_INPUT

    raise exception


def exit_code_for_report(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_CHECK_FAILED
