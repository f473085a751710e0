from pathlib import Path
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # Environment Configuration
    ENVIRONMENT: Literal["development", "staging", "production"] = Field(
        default="development"
    )

    # MCP server port (uvicorn)
    PORT: Optional[int] = Field(default=None)

    # Logging
    LOG_LEVEL: str = Field(default="INFO")

    # Default RNG seed for noisy waveforms when no --seed is given
    GENFREQ_SEED: int = Field(default=0)

    # MCP tools read and write files only below this directory
    DATA_DIR: Path = Field(default=Path("data"))

    # Signal defaults
    NOMINAL_FREQUENCY: float = Field(default=60.0, gt=0)
    DEFAULT_SAMPLE_RATE: float = Field(default=10_000.0, gt=0)

    # Geometric estimator defaults
    DIFF_SCHEME: Literal["central", "one_sided_start_end"] = Field(default="central")
    FILTER_TAU: float = Field(default=0.0, ge=0)
    MASK_RATIO: float = Field(default=1e-6, ge=0)

    # SRF-PLL defaults (per-unit q-axis input)
    PLL_KP: float = Field(default=92.0, gt=0)
    PLL_KI: float = Field(default=4230.0, gt=0)

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def set_log_level(cls, v, info):
        """Auto-adjust log level based on environment if not explicitly set"""
        if v != "INFO":  # If explicitly set, keep it
            return v.upper()

        environment = info.data.get("ENVIRONMENT", "development")
        if environment == "production":
            return "INFO"
        elif environment == "staging":
            return "DEBUG"
        else:
            return "INFO"

    @property
    def is_development(self) -> bool:
        return self.ENVIRONMENT == "development"

    @property
    def is_production(self) -> bool:
        return self.ENVIRONMENT == "production"

    @property
    def estimator_defaults(self) -> dict:
        return {
            "diff_scheme": self.DIFF_SCHEME,
            "filter_tau": self.FILTER_TAU,
            "mask_ratio": self.MASK_RATIO,
        }

    @property
    def pll_defaults(self) -> dict:
        return {"kp": self.PLL_KP, "ki": self.PLL_KI}

    @property
    def server_info(self) -> dict:
        """Get server configuration info"""
        return {
            "environment": self.ENVIRONMENT,
            "port": self.PORT,
            "log_level": self.LOG_LEVEL,
            "nominal_frequency": self.NOMINAL_FREQUENCY,
        }


settings = Settings()
