import os
import sys
import logging
from enum import Enum
from typing import ClassVar, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class Environment(str, Enum):
    DEVELOPMENT = "development"
    PRODUCTION = "production"
    TEST = "test"


class Settings(BaseSettings):
    """Numerical budgets and defaults, read from RTGQ_* variables and `.env.<environment>`."""

    ENVIRONMENT: str = Environment.PRODUCTION.value

    # retrial rate used when --theta is omitted
    DEFAULT_THETA: float = Field(default=1.4, gt=0)

    QUAD_TOLERANCE: float = Field(default=1e-10, gt=0)
    QUAD_LIMIT: int = Field(default=200, ge=1)

    MAX_TRUNCATION: int = Field(default=2**20, ge=1)
    DIRECT_SOLVE_LIMIT: int = Field(default=4096, ge=1)
    POWER_ITERATION_BUDGET: int = Field(default=10**6, ge=1)

    CONFIDENCE: float = Field(default=0.95, gt=0, lt=1)
    MAX_WORKERS: Optional[int] = Field(default=None, ge=1)  # None: one per CPU

    model_config = SettingsConfigDict(
        env_prefix="RTGQ_",
        env_file_encoding="utf-8",
        extra="ignore",
        use_enum_values=True,
    )

    @property
    def environment(self) -> Environment:
        try:
            return Environment(self.ENVIRONMENT)
        except ValueError:
            return Environment.PRODUCTION

    @property
    def is_production(self) -> bool:
        return self.environment is Environment.PRODUCTION

    @property
    def is_development(self) -> bool:
        return self.environment is Environment.DEVELOPMENT

    @property
    def is_test(self) -> bool:
        return self.environment is Environment.TEST or "pytest" in sys.modules


class SettingsManager:
    """Process-wide Settings, loaded on first use; `reset` forces a reload from the environment."""

    _instance: ClassVar[Optional[Settings]] = None

    @classmethod
    def get_settings(cls) -> Settings:
        if cls._instance is None:
            env = os.getenv("RTGQ_ENVIRONMENT", Environment.PRODUCTION.value)
            known = {e.value for e in Environment}
            env_file = f".env.{env if env in known else Environment.PRODUCTION.value}"
            logger.debug(f"loading settings for {env} from {env_file} and RTGQ_* variables")
            cls._instance = Settings(_env_file=env_file)
        return cls._instance

    @classmethod
    def reset(cls) -> None:
        cls._instance = None


def get_settings() -> Settings:
    return SettingsManager.get_settings()
