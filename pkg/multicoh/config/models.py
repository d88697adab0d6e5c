"""
Configuration models using Pydantic for validation.

Configuration is optional: every field has a default, and a JSON file passed with
``--config`` overrides them.
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = Field(
        default="WARNING",
        description="Logging level: DEBUG, INFO, WARNING, ERROR, CRITICAL"
    )
    file: Optional[str] = Field(
        default=None,
        description="Log file path (None for stderr only)"
    )

    @field_validator("level")
    @classmethod
    def validate_level(cls, v):
        """Validate logging level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid_levels}")
        return v.upper()


class CheckConfig(BaseModel):
    """Axiom checking configuration."""

    arity_bound: int = Field(
        default=3, ge=0, le=6, description="Arity bound used by builders and demos"
    )
    max_workers: int = Field(
        default=1, ge=1, le=64, description="Worker threads for independent check tasks"
    )
    cross_validate_phi: bool = Field(
        default=True,
        description="Compute rigidified 2-cells through both factorizations and compare"
    )


class DemoConfig(BaseModel):
    """Demo scenario configuration."""

    seed: int = Field(default=0, description="Seed for generated corpora")
    corpus_size: int = Field(
        default=50, ge=1, le=10000, description="Number of generated symmetric functors"
    )
    monoid_orders: List[int] = Field(
        default_factory=lambda: [2, 3, 4],
        description="Orders k of the cyclic monoids Z/k used by the demos"
    )
    algebra_order: int = Field(
        default=3, ge=1, le=12, description="Order k of the monoid Z/k used by algebra-demo"
    )

    @field_validator("monoid_orders")
    @classmethod
    def validate_orders(cls, v):
        """Orders must be positive."""
        if not v or any(k < 1 for k in v):
            raise ValueError(f"monoid_orders must be a non-empty list of positive integers: {v}")
        return v


class AppConfig(BaseModel):
    """Complete application configuration."""

    model_config = ConfigDict(extra="forbid")

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    check: CheckConfig = Field(default_factory=CheckConfig)
    demo: DemoConfig = Field(default_factory=DemoConfig)
