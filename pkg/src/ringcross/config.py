"""
Configuration for ringcross: protocol defaults, environment settings and
keyed config-file loading.
"""

import logging
import os
from pathlib import Path
from typing import Dict, Union

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)


class ProtocolDefaults:
    """Defaults of the benchmark protocol (selection, rates, sizes, budget)."""

    # Population and search space
    POPULATION_SIZE = 20
    DIMENSION = 30

    # Variation
    CROSSOVER_RATE = 0.8
    MUTATION_RATE = 0.01      # per gene
    SIGMA_FRACTION = 0.1      # of the bound width
    IC_RATIO = 1.0
    HC_RATIO = 1.2

    # Selection
    SELECTION_PRESSURE = 2.0
    ELITE_COUNT = 2

    # Budget and repetitions
    EVAL_BUDGET = 10000
    RUNS_PER_CELL = 30
    MASTER_SEED = 0

    # Variety enumeration limits
    VARIETY_MIN_LENGTH = 1
    VARIETY_MAX_LENGTH = 12


PRNG_NAME = "PCG64"
SEED_SCHEME = "blake2b(master_seed|function|operator|trial)->SeedSequence"
BUDGET_ACCOUNTING = "initial population counts toward budget; last generation truncated"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Process-level settings taken from the environment."""

    log_level: str = Field(
        default="INFO",
        description="Root logging level for the CLI"
    )
    jobs: int = Field(
        default=1,
        ge=1,
        description="Parallel workers used by the experiment harness"
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Accept only level names the logging module knows."""
        level = v.strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {v}")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from RINGCROSS_* variables (a .env file is honored)."""
        load_dotenv()
        values = {}
        if os.getenv("RINGCROSS_LOG_LEVEL"):
            values["log_level"] = os.getenv("RINGCROSS_LOG_LEVEL")
        if os.getenv("RINGCROSS_JOBS"):
            values["jobs"] = os.getenv("RINGCROSS_JOBS")
        return cls(**values)


def normalize_key(key: str) -> str:
    """Map a config key or flag name onto its canonical snake_case form."""
    return key.strip().lstrip("-").replace("-", "_").lower()


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Read a keyed text config file with one ``key = value`` per line.

    Args:
        path: Location of the config file

    Returns:
        Mapping of normalized keys to raw string values

    Raises:
        FileNotFoundError: If the file does not exist
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Config file not found: {path}")

    raw = dotenv_values(path)
    values = {
        normalize_key(key): value
        for key, value in raw.items()
        if value is not None
    }
    logger.debug(f"Loaded {len(values)} keys from {path}")
    return values
