"""
Configuration management using Pydantic Settings
"""
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Literal


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="ELASTIC_MATCH_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Numerical tolerances
    tol: float = 1e-12  # vertex-hit tolerance relative to block size
    target_tol: float = 1e-9
    knot_tol: float = 1e-12
    unit_norm_tol: float = 1e-9
    value_tol: float = 1e-12

    # Matching defaults
    engine: Literal["exact", "dp"] = "exact"
    pareto: bool = False
    dp_refine: int = 1
    normalize: bool = False

    # Geodesics
    geodesic_mode: Literal["linear", "sphere"] = "linear"
    geodesic_steps: int = 5

    # Output
    json_digits: int = 12
    output_dir: str = "./output"
    log_dir: str = "logs"
    log_level: str = "INFO"

    # API Configuration
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_workers: int = 1


# Global settings instance
settings = Settings()
