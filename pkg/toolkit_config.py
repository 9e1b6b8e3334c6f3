import logging
import os
from pathlib import Path
from typing import Mapping, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

REPO_ROOT = Path(__file__).resolve().parent

# environment variable per setting
ENVIRONMENT = {
    "default_length": "SEMIGROUP_DEFAULT_LENGTH",
    "search_cap": "SEMIGROUP_SEARCH_CAP",
    "samples": "SEMIGROUP_SAMPLES",
    "seed": "SEMIGROUP_SEED",
    "catalog_dir": "SEMIGROUP_CATALOG_DIR",
    "log_level": "SEMIGROUP_LOG_LEVEL",
}


class Settings(BaseModel):
    default_length: int = Field(4, ge=0, description="resolution length budget n")
    search_cap: int = Field(10, ge=0, description="largest order searched exhaustively")
    samples: int = Field(100, ge=1, description="random samples per equivariance check")
    seed: int = 0
    catalog_dir: str = str(REPO_ROOT / "catalog")
    log_level: str = "INFO"

    @field_validator("log_level")
    @classmethod
    def check_level(cls, value: str) -> str:
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown logging level {value}")
        return value


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    environ = os.environ if environ is None else environ
    values = {key: environ[var] for key, var in ENVIRONMENT.items() if environ.get(var) not in (None, "")}
    try:
        return Settings(**values)
    except ValidationError as e:
        error = e.errors()[0]
        variable = ENVIRONMENT[str(error["loc"][0])]
        raise ValueError(f"{variable} is malformed: {error['msg']}") from e


settings = load_settings()
