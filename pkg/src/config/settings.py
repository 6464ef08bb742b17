"""
Configuration settings for the nc-rank certifier
"""
from pydantic import Field
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    # Application
    app_name: str = Field(default="ncrank-certify", description="Application name")
    app_version: str = Field(default="1.0.0", description="Application version")

    # Algorithm
    strategy: str = Field(default="greedy", description="Blow-up reduction strategy: greedy or dm")
    threshold_factor: int = Field(default=1, description="Multiplier applied to the field-size threshold")
    threshold_margin: int = Field(default=0, description="Additive margin on the field-size threshold")
    sample_budget: int = Field(default=4096, description="Maximum candidates tried by one specialization search")
    local_search: bool = Field(default=False, description="Opt in to seeded random directions before the division algebra pipeline")
    local_directions: int = Field(default=4, description="Random directions tried by the local search")
    seed: int = Field(default=0, description="Seed of the deterministic local search")
    max_iterations: Optional[int] = Field(default=None, description="Cap on main-loop iterations (default n + 1)")
    dm_round_factor: int = Field(default=1, description="Multiplier on the N^3 n repair-round cap")
    dm_reduce_data: bool = Field(default=True, description="Reduce coefficients after each table replacement")
    bit_growth_exponent: int = Field(default=4, description="Exponent of the bit-growth envelope")
    check_basis_on_load: bool = Field(default=True, description="Verify basis independence when loading spaces")
    max_extension_degree: int = Field(default=64, description="Largest cyclic extension degree that may be built")

    # Logging
    log_level: str = Field(default="INFO", description="Root log level")
    logs_dir: str = Field(default="logs", description="Directory for trace and error logs")
    trace_enabled: bool = Field(default=False, description="Write per-iteration JSON-lines traces")
    log_max_bytes: int = Field(default=10 * 1024 * 1024, description="Rotation size of log files")
    log_backup_count: int = Field(default=5, description="Rotated log files kept")

    # Optional JSON config file merged by the configuration manager
    config_file: Optional[str] = Field(default=None, description="Path to a JSON run configuration")

    class Config:
        env_prefix = "NCRANK_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False
        extra = "ignore"


# Global settings instance
settings = Settings()
