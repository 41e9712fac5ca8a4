"""Engine configuration and the process-wide session.

The active configuration fixes the prime p for the whole session; every constructor takes an explicit
``field`` argument that defaults to the session field, so no value ever mixes moduli.
"""

from __future__ import annotations

import os
import threading
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from supermagic.lib.constants import (
    DEFAULT_CONFIG_PATH,
    DEFAULT_P,
    DEFAULT_SEED,
    JACOBI_EXHAUSTIVE_LIMIT,
    JACOBI_SAMPLES,
    SIMPLICITY_ATTEMPTS,
    WORKERS_ENV_VAR,
    SupermagicError,
)
from supermagic.lib.exact_linalg import PrimeField, is_prime

if TYPE_CHECKING:
    from collections.abc import Iterator


class ConfigurationError(SupermagicError):
    """Configuration-related errors."""


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


class EngineConfig(BaseModel):
    """Configuration for an engine session."""

    p: int = Field(default=DEFAULT_P, description="Odd prime characteristic of the ground field")
    seed: int = Field(default=DEFAULT_SEED, description="Seed for sampled checks and the simplicity test")
    jacobi_exhaustive_limit: int = Field(
        default=JACOBI_EXHAUSTIVE_LIMIT, description="Largest dimension checked exhaustively by default"
    )
    jacobi_samples: int = Field(default=JACOBI_SAMPLES, description="Random triples for sampled Jacobi checks")
    force_exhaustive: bool = Field(default=False, description="Check Jacobi exhaustively at every dimension")
    simplicity_attempts: int = Field(default=SIMPLICITY_ATTEMPTS, description="Attempt bound of the simplicity test")
    workers: int = Field(default_factory=_default_workers, description="Concurrent checks in the harness")

    @field_validator("p")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        if value == 2 or not is_prime(value):
            raise ValueError(f"p must be an odd prime, got {value}")
        return value

    @field_validator("jacobi_samples", "simplicity_attempts", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be positive")
        return value

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)


def make_config(**overrides: object) -> EngineConfig:
    """Build a configuration, mapping validation failures to ConfigurationError."""
    try:
        return EngineConfig.model_validate(overrides)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {e}") from e


class ConfigManager:
    """Saves, loads and lists named engine configurations."""

    def __init__(self, config_dir: Path | None = None):
        """Initialize configuration manager.

        Args:
            config_dir: Directory for storing configuration files
        """
        self.config_dir = config_dir or DEFAULT_CONFIG_PATH

    def _ensure_config_dir(self) -> None:
        self.config_dir.mkdir(parents=True, exist_ok=True)

    def save_config(self, config: EngineConfig, name: str) -> Path:
        """Save configuration to YAML file.

        Args:
            config: Engine configuration to save
            name: Configuration name (used as filename)

        Returns:
            Path to saved configuration file
        """
        self._ensure_config_dir()
        config_path = self.config_dir / f"{name}.yaml"

        with config_path.open("w", encoding="utf-8") as f:
            yaml.safe_dump(config.model_dump(mode="json"), f, default_flow_style=False, sort_keys=True)

        return config_path

    def load_config(self, name: str) -> EngineConfig:
        """Load configuration from YAML file.

        Raises:
            ConfigurationError: If the file is missing or malformed
        """
        config_path = self.config_dir / f"{name}.yaml"

        if not config_path.exists():
            raise ConfigurationError(f"Configuration file '{name}.yaml' not found")

        try:
            with config_path.open(encoding="utf-8") as f:
                config_dict = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Configuration file '{name}.yaml' is not valid YAML: {e}") from e

        if not isinstance(config_dict, dict):
            raise ConfigurationError(f"Configuration file '{name}.yaml' must contain a mapping")
        return make_config(**config_dict)

    def list_configs(self) -> list[str]:
        if not self.config_dir.exists():
            return []
        return sorted(f.stem for f in self.config_dir.glob("*.yaml") if f.is_file())

    def create_default_config(self) -> EngineConfig:
        return EngineConfig()


_lock = threading.Lock()
_active: EngineConfig = EngineConfig()


def configure(config: EngineConfig) -> None:
    """Install ``config`` as the session configuration."""
    global _active
    with _lock:
        _active = config


def current_config() -> EngineConfig:
    return _active


def current_field() -> PrimeField:
    return _active.field


def resolve_field(field: PrimeField | None) -> PrimeField:
    return field if field is not None else current_field()


@contextmanager
def session(config: EngineConfig) -> Iterator[EngineConfig]:
    """Temporarily install ``config`` as the session configuration."""
    previous = current_config()
    configure(config)
    try:
        yield config
    finally:
        configure(previous)
