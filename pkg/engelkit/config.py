from functools import lru_cache
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit configuration settings."""

    model_config = SettingsConfigDict(
        env_prefix="ENGELKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False
    )

    # Application settings
    app_name: str = "engelkit"
    app_version: str = "0.1.0"
    log_level: str = "WARNING"

    # Engel settings
    depth: int = 3
    max_depth: int = 4

    # Link construction settings
    max_longitude_length: int = 400000

    # Milnor probe settings
    probe_samples: int = 64
    probe_seed: int = 20240229

    # Output settings
    json_indent: Optional[int] = None

    # Metrics settings
    metrics_textfile: Optional[str] = None


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
