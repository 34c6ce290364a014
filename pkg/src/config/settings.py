"""Application settings using Pydantic."""

from functools import lru_cache
from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings loaded from environment variables (prefix ``CM_``)."""

    model_config = SettingsConfigDict(
        env_prefix="CM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="INFO")

    # Iteration defaults
    default_tol: float = Field(default=0.001)  # bits, H(Q||P) stop threshold
    default_seed: int = Field(default=20170101)

    # Trial worker pool
    workers: int = Field(default=4)

    # Paths
    base_dir: Path = Field(default=Path(__file__).parent.parent.parent)
    config_dir: Path = Field(default=Path(__file__).parent.parent.parent / "config")
    output_dir: Path = Field(default=Path("out"))

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: object) -> str:
        """Accept any casing for the log level."""
        if isinstance(v, str) and v.strip():
            return v.strip().upper()
        return "INFO"

    @field_validator("workers")
    @classmethod
    def positive_workers(cls, v: int) -> int:
        """Keep at least one worker."""
        return max(1, v)

    @property
    def presets_dir(self) -> Path:
        """Directory holding the named preset experiment files."""
        return self.config_dir / "presets"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
