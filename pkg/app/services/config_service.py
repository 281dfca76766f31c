"""Load and validate the TOML run configuration."""
import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from app.models.data_models.RunConfig import RunConfig
from app.models.exceptions import ConfigIOError, ConfigSyntaxError, ConfigValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "default.toml"


def format_validation_error(exc: ValidationError) -> str:
    """One 'section.field: message' line per violation"""
    lines = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<root>"
        lines.append(f"{location}: {error['msg']}")
    return "\n".join(lines)


def config_from_mapping(data: dict) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigValidationError(format_validation_error(exc)) from exc


def parse_config(path: Optional[Union[str, Path]] = None) -> RunConfig:
    """Validated RunConfig from a TOML file; None gives the built-in defaults"""
    if path is None:
        logger.info("No config file given, using built-in defaults")
        return RunConfig()
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigIOError(f"Cannot read config file {path}: {exc.strerror or exc}") from exc
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ConfigSyntaxError(f"{path}: {exc}") from exc
    config = config_from_mapping(data)
    logger.info(f"Loaded config from {path}")
    return config
