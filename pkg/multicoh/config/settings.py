"""
Environment overrides, read with pydantic-settings.
"""

from typing import Optional

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from .loader import ConfigurationError, format_validation_error


class RuntimeSettings(BaseSettings):
    """Settings taken from ``MULTICOH_*`` environment variables."""

    model_config = SettingsConfigDict(env_prefix="MULTICOH_", extra="ignore")

    threads: Optional[int] = Field(
        default=None, ge=1, description="Worker thread limit (MULTICOH_THREADS)"
    )


def effective_workers(configured: int, flag: Optional[int] = None) -> int:
    """
    Resolve the number of worker threads.

    The ``--threads`` flag replaces ``check.max_workers``; MULTICOH_THREADS caps
    whichever of the two applies.

    Args:
        configured: ``check.max_workers`` from the configuration.
        flag: ``--threads`` value, if given.

    Returns:
        Number of workers, at least 1.

    Raises:
        ConfigurationError: If MULTICOH_THREADS is not a positive integer.
    """
    try:
        threads = RuntimeSettings().threads
    except ValidationError as e:
        raise ConfigurationError(format_validation_error("Invalid environment", e)) from e

    requested = max(1, configured if flag is None else flag)
    if threads is not None:
        return min(requested, threads)
    return requested
