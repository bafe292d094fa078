from pathlib import Path

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.utils.error import ConfigError


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="GV_", env_file=".env", extra="ignore"
    )

    n_max_sl: int = Field(default=6, ge=1)
    n_max_so: int = Field(default=6, ge=1)
    n_max_su: int = Field(default=3, ge=0)
    n_max_sp: int = Field(default=2, ge=0)
    wo_q_max: int = Field(default=3, ge=1)
    decimal_digits: int = Field(default=12, ge=1, le=200)
    log_level: str = "WARNING"


def load_settings(config_path: Path | None = None) -> Settings:
    """Read settings from the environment and an optional key=value file."""

    if config_path is not None and not config_path.is_file():
        raise ConfigError(f"file not found: {config_path}")
    try:
        if config_path is None:
            return Settings()
        return Settings(_env_file=config_path)  # type: ignore[call-arg]
    except ValidationError as e:
        raise ConfigError(str(e)) from e


settings = load_settings()
