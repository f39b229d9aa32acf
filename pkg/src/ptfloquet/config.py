"""
Configuration management for ptfloquet.

Uses Pydantic Settings to load numerical defaults from environment variables
(prefix PTFLOQUET_) or a .env file. Command-line flags override these per run;
the settings only decide what a run does when a flag is omitted.

Usage:
    from ptfloquet.config import settings
    print(settings.rel_tol)
"""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ptfloquet.core.constants import (
    CLASSIFY_DEFAULTS,
    FLOQUET_DEFAULTS,
    INTEGRATOR_DEFAULTS,
)


class Settings(BaseSettings):
    """
    Process-wide numerical and logging defaults.

    Environment variables can be set directly (PTFLOQUET_REL_TOL=1e-11) or
    via a .env file in the working directory.
    """

    model_config = SettingsConfigDict(
        env_prefix="PTFLOQUET_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ==========================================================================
    # Integrator
    # ==========================================================================

    rel_tol: float = Field(
        default=INTEGRATOR_DEFAULTS["rel_tol"],
        gt=0,
        description="Relative tolerance of the adaptive Runge-Kutta integrator",
    )
    abs_tol: float = Field(
        default=INTEGRATOR_DEFAULTS["abs_tol"],
        gt=0,
        description="Absolute tolerance of the adaptive Runge-Kutta integrator",
    )
    max_step_fraction: float = Field(
        default=INTEGRATOR_DEFAULTS["max_step_fraction"],
        gt=0,
        le=0.05,
        description="Largest integration step as a fraction of the drive period (<= 1/20)",
    )
    ode_method: str = Field(
        default=INTEGRATOR_DEFAULTS["method"],
        description="scipy embedded Runge-Kutta pair: RK45 (default) or DOP853",
    )

    # ==========================================================================
    # Classification / Floquet truncation
    # ==========================================================================

    threshold: float = Field(
        default=CLASSIFY_DEFAULTS["threshold"],
        gt=0,
        description="max Im(eps) above which a point is PT-broken (units of omega0)",
    )
    truncation: int = Field(
        default=FLOQUET_DEFAULTS["truncation"],
        ge=2,
        description="Floquet matrix half-width N (photon blocks -N..N)",
    )
    scan_truncation: int = Field(
        default=FLOQUET_DEFAULTS["scan_truncation"],
        ge=2,
        description="Cheaper half-width for scans with lambda <= 0.1 omega0",
    )
    convergence_tol: float = Field(
        default=FLOQUET_DEFAULTS["convergence_tol"],
        gt=0,
        description="Allowed change of the central quasienergies between N and N-4",
    )

    # ==========================================================================
    # Runs
    # ==========================================================================

    threads: int = Field(
        default=1,
        ge=1,
        description="Workers for the deterministic parallel map used by scans",
    )
    output_dir: str = Field(
        default="data",
        description="Directory for reproduced figure data",
    )

    # ==========================================================================
    # Logging Configuration
    # ==========================================================================

    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)",
    )
    log_format: str = Field(
        default="console",
        description="Log format: 'json' for machine-readable runs, 'console' for dev",
    )

    # ==========================================================================
    # Validators
    # ==========================================================================

    @field_validator("ode_method")
    @classmethod
    def validate_ode_method(cls, v: str) -> str:
        """Only embedded explicit pairs are supported (complex state)."""
        upper_v = v.upper()
        if upper_v not in {"RK45", "DOP853"}:
            raise ValueError("ode_method must be RK45 or DOP853")
        return upper_v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Ensure log level is valid."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        upper_v = v.upper()
        if upper_v not in valid_levels:
            raise ValueError(f"log_level must be one of {valid_levels}")
        return upper_v

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        lower_v = v.lower()
        if lower_v not in {"json", "console"}:
            raise ValueError("log_format must be 'json' or 'console'")
        return lower_v


@lru_cache
def get_settings() -> Settings:
    """Get the cached settings instance."""
    return Settings()


# Convenience alias for importing
settings = get_settings()
