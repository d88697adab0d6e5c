"""
Configuration loader for JSON config files.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from .models import AppConfig


logger = logging.getLogger(__name__)


class ConfigurationError(Exception):
    """Raised when configuration is invalid or cannot be loaded."""
    pass


def format_validation_error(title: str, error: ValidationError) -> str:
    """
    Render a pydantic ValidationError one field per line.

    Args:
        title: First line of the message.
        error: The validation error.

    Returns:
        Multi-line message.
    """
    lines = []
    for item in error.errors():
        field = " -> ".join(str(x) for x in item["loc"])
        lines.append(f"  - {field}: {item['msg']}")
    return title + "\n" + "\n".join(lines)


def load_config(path: Optional[str] = None) -> AppConfig:
    """
    Load configuration from a JSON file.

    Args:
        path: Path to the config file. If None, defaults are returned.

    Returns:
        Validated AppConfig instance.

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid.
    """
    if path is None:
        logger.debug("No config file given, using defaults")
        return AppConfig()

    config_path = Path(path)
    if not config_path.exists():
        raise ConfigurationError(f"Config file not found: {config_path}")

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            config_dict = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Invalid JSON in {config_path}: {e}") from e
    except IOError as e:
        raise ConfigurationError(f"Failed to read {config_path}: {e}") from e

    # "_comment" keys are allowed at the top level for hand-written files
    config_dict.pop("_comment", None)

    try:
        config = AppConfig(**config_dict)
    except ValidationError as e:
        raise ConfigurationError(
            format_validation_error("Configuration validation failed:", e)
        ) from e

    logger.info(f"Configuration loaded from {config_path}")
    return config


def save_config(config: AppConfig, path: str) -> None:
    """
    Save configuration to a JSON file.

    Args:
        config: AppConfig instance to save.
        path: Destination path.

    Raises:
        ConfigurationError: If the file cannot be written.
    """
    config_path = Path(path)
    try:
        with open(config_path, "w", encoding="utf-8") as f:
            json.dump(config.model_dump(), f, indent=2)
    except IOError as e:
        raise ConfigurationError(f"Failed to write {config_path}: {e}") from e

    logger.info(f"Configuration saved to {config_path}")
