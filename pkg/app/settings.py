from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process environment; only the worker cap is read from it"""
    model_config = SettingsConfigDict(env_prefix="VAPORPAIR_", env_file=".env", extra="ignore")

    max_workers: int = Field(default=1, ge=1)


def get_settings() -> Settings:
    return Settings()
