"""
Configuration settings for vallab
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError
from pydantic_settings import BaseSettings

from vallab.core.errors import ConfigError
from vallab.schemas import RunConfig

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    # Project
    PROJECT_NAME: str = "vallab"
    VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"

    # Ejemplo por defecto (p, q) = (2, 3); el par (3, 2) es el contraste
    P: int = 2
    Q: int = 3
    M: int = 1
    DEPTH: int = 5
    PREC: Optional[str] = None

    # Presupuestos
    MAX_ITER: int = 10
    SEED: int = 0
    CORPUS_SIZE: int = 100
    AS_CORPUS_SIZE: int = 200
    PROBE_PREC: int = 6
    PROBE_RETRIES: int = 3

    # Salida
    FORMAT: str = "text"
    OUTPUT: Optional[str] = None

    # JSON con un RunConfig (VALLAB_CONFIG)
    CONFIG: Optional[str] = None

    class Config:
        env_file = ".env"
        env_prefix = "VALLAB_"
        case_sensitive = False


def get_settings() -> Settings:
    return Settings()


def _settings_layer(settings: Settings) -> Dict[str, Any]:
    return {
        "p": settings.P,
        "q": settings.Q,
        "m": settings.M,
        "depth": settings.DEPTH,
        "prec": settings.PREC,
        "max_iter": settings.MAX_ITER,
        "seed": settings.SEED,
        "corpus_size": settings.CORPUS_SIZE,
        "as_corpus_size": settings.AS_CORPUS_SIZE,
        "probe_prec": settings.PROBE_PREC,
        "probe_retries": settings.PROBE_RETRIES,
        "format": settings.FORMAT,
        "output": settings.OUTPUT,
    }


def _file_layer(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config file {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def resolve_run_config(overrides: Optional[Dict[str, Any]] = None, settings: Optional[Settings] = None) -> RunConfig:
    """
    Settings (entorno / .env) → archivo VALLAB_CONFIG → flags de la CLI.

    Raises:
        ConfigError si el resultado no valida
    """
    settings = settings or get_settings()
    merged = _settings_layer(settings)
    merged.update(_file_layer(settings.CONFIG))
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        config = RunConfig(**merged)
    except ValidationError as e:
        problems = "; ".join(err["msg"] for err in e.errors())
        raise ConfigError(f"invalid configuration: {problems}")
    logger.debug(f"run config: {config.model_dump(mode='json')}")
    return config
