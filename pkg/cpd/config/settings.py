"""
Runtime settings loaded from environment variables.

Uses Pydantic Settings for validation and type coercion. Every field can be
overridden with a ``CPD_``-prefixed environment variable or a ``.env`` file,
e.g. ``CPD_THREADS=8`` sizes the scan worker pool.
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical and runtime configuration."""

    model_config = SettingsConfigDict(
        env_prefix="CPD_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_json: bool = False

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Accept lower-case level names from the environment."""
        value = str(v).upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return value

    # Concurrency
    threads: int = Field(
        default=4,
        ge=1,
        description="Worker pool size for t-grid scans",
    )

    # Reproducibility
    seed: int = Field(
        default=20240119,
        description="Default RNG seed for random oracle offsets",
    )

    # Truncated-lattice oracle
    max_box_size: int = Field(
        default=250_000,
        ge=1,
        description="Largest vertex count N allowed for a truncated box",
    )
    dense_oracle_limit: int = Field(
        default=2000,
        ge=1,
        description="Largest N evolved through the dense eigendecomposition path",
    )
    lightcone_margin: int = Field(
        default=25,
        ge=1,
        description="Box radius beyond the ballistic front ceil(2t)",
    )

    # Eigensolver
    jacobi_tolerance: float = Field(default=1e-13, gt=0)
    jacobi_max_sweeps: int = Field(default=100, ge=1)

    # Kernel truncation and verification tolerances
    kernel_tail: int = Field(
        default=40,
        ge=1,
        description="Extra Bessel orders kept beyond the turning point ceil(2t)",
    )
    oracle_tolerance: float = Field(default=1e-8, gt=0)
    quadrature_tolerance: float = Field(default=1e-11, gt=0)


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings.

    Returns:
        Settings instance loaded from environment variables.
    """
    return Settings()
