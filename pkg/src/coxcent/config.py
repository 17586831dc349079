"""Application configuration management."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .core.exceptions import ConfigurationError


class Settings(BaseSettings):
    """Application settings with validation and environment loading."""

    # Computation bounds
    BOUND_L: int = Field(default=3, ge=0, description="Y_I word-length window for W-perp expansion")
    VERTEX_BUDGET: int = Field(
        default=1_000_000, ge=1, description="Maximum number of groupoid vertices"
    )
    GROUP_ORDER_CAP: int = Field(
        default=200_000, ge=1, description="Maximum group order for brute-force enumeration"
    )
    FIELD_MAX_N: int = Field(
        default=1_000_000, ge=1, description="Largest admissible lcm of finite bond labels"
    )

    # Property-check bounds
    TORSION_CHECK_CAP: int = Field(
        default=12, ge=1, description="Matrix powers tried when checking Y_I for torsion"
    )
    DIHEDRAL_POWER_CAP: int = Field(
        default=24, ge=1, description="Powers tried when certifying infinite order of a'b'"
    )
    IGRAPH_PATH_LENGTH: int = Field(
        default=4, ge=0, description="Longest I-graph path checked for reducedness"
    )

    # Randomized sampling
    SEED: int = Field(default=0, description="Seed for randomized property sampling")

    # Logging Configuration
    LOG_LEVEL: str = Field(default="WARNING", description="Logging level")
    LOG_FORMAT: str = Field(default="text", description="Log format (json|text)")
    LOG_FILE: Optional[Path] = Field(default=None, description="Log file path")

    # Directory Configuration
    BASE_DIR: Path = Field(default_factory=lambda: Path(__file__).resolve().parent)
    TEMPLATES_DIR: Path = Field(default_factory=lambda: Path(__file__).resolve().parent / "templates")

    model_config = SettingsConfigDict(
        env_prefix="COXCENT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of: {', '.join(sorted(valid_levels))}")
        return v.upper()

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Validate log format."""
        valid_formats = {"json", "text"}
        if v.lower() not in valid_formats:
            raise ValueError(f"LOG_FORMAT must be one of: {', '.join(sorted(valid_formats))}")
        return v.lower()


class RunConfig(BaseModel):
    """Per-run options: settings defaults overridden by command-line flags."""

    bound_L: int = Field(default=3, ge=0)
    vertex_budget: int = Field(default=1_000_000, gt=0)
    group_order_cap: int = Field(default=200_000, gt=0)
    field_max_n: int = Field(default=1_000_000, gt=0)
    torsion_check_cap: int = Field(default=12, gt=0)
    dihedral_power_cap: int = Field(default=24, gt=0)
    igraph_path_length: int = Field(default=4, ge=0)
    tree_preference: List[str] = Field(default_factory=list)
    tree_avoid: List[str] = Field(default_factory=list)
    output: str = Field(default="text")
    dot_dir: Optional[Path] = None

    @field_validator("output")
    @classmethod
    def validate_output(cls, v: str) -> str:
        """Validate output format."""
        if v not in {"text", "json"}:
            raise ValueError("output must be 'text' or 'json'")
        return v

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: Any) -> "RunConfig":
        """Build a run configuration from settings, dropping overrides that are None."""
        values: dict = {
            "bound_L": settings.BOUND_L,
            "vertex_budget": settings.VERTEX_BUDGET,
            "group_order_cap": settings.GROUP_ORDER_CAP,
            "field_max_n": settings.FIELD_MAX_N,
            "torsion_check_cap": settings.TORSION_CHECK_CAP,
            "dihedral_power_cap": settings.DIHEDRAL_POWER_CAP,
            "igraph_path_length": settings.IGRAPH_PATH_LENGTH,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls(**values)
        except ValidationError as exc:
            raise _configuration_error("invalid run option", exc) from exc


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get cached application settings."""
    try:
        return Settings()
    except ValidationError as exc:
        raise _configuration_error("invalid COXCENT_ setting", exc) from exc


def _configuration_error(prefix: str, exc: ValidationError) -> ConfigurationError:
    errors = [
        {"field": ".".join(str(part) for part in e["loc"]), "message": e["msg"]}
        for e in exc.errors()
    ]
    first = errors[0]
    return ConfigurationError(
        f"{prefix} {first['field']}: {first['message']}", details={"errors": errors}
    )
