"""
Run configuration management for the nc-rank certifier
"""
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from src.config.settings import settings
from src.core.errors import ConfigurationError

logger = logging.getLogger(__name__)

STRATEGIES = ("greedy", "dm")


@dataclass
class FieldSizeConfig:
    """Field-size threshold constants"""
    threshold_factor: int = 1
    threshold_margin: int = 0

    def threshold(self, n: int, d: int, d_prime: int) -> int:
        """Required number of field elements for one step at block size n"""
        base = max(2 * n * d * d_prime + 1, (n * d) ** 2)
        return base * self.threshold_factor + self.threshold_margin


@dataclass
class SamplingConfig:
    """Candidate search budgets"""
    sample_budget: int = 4096
    local_search: bool = False
    local_directions: int = 4
    seed: int = 0


@dataclass
class BudgetConfig:
    """Iteration and size budgets"""
    max_iterations: Optional[int] = None
    dm_round_factor: int = 1
    dm_reduce_data: bool = True
    max_extension_degree: int = 64
    bit_growth_exponent: int = 4


@dataclass
class TraceConfig:
    """Trace output"""
    enabled: bool = False
    logs_dir: str = "logs"


@dataclass
class RunConfig:
    """Complete configuration of one nc-rank computation"""
    strategy: str = "greedy"
    field_size: FieldSizeConfig = field(default_factory=FieldSizeConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    budgets: BudgetConfig = field(default_factory=BudgetConfig)
    trace: TraceConfig = field(default_factory=TraceConfig)
    check_basis_on_load: bool = True

    def __post_init__(self):
        """Validate run configuration"""
        errors = []
        if self.strategy not in STRATEGIES:
            errors.append(f"strategy must be one of {', '.join(STRATEGIES)}, got {self.strategy!r}")
        if self.field_size.threshold_factor < 1:
            errors.append("threshold factor must be positive")
        if self.field_size.threshold_margin < 0:
            errors.append("threshold margin cannot be negative")
        if self.sampling.sample_budget < 1:
            errors.append("sample budget must be positive")
        if self.sampling.local_directions < 0:
            errors.append("local search directions cannot be negative")
        if self.budgets.max_iterations is not None and self.budgets.max_iterations < 1:
            errors.append("iteration cap must be positive")
        if self.budgets.dm_round_factor < 1:
            errors.append("repair round factor must be positive")
        if self.budgets.max_extension_degree < 1:
            errors.append("extension degree budget must be positive")
        if self.budgets.bit_growth_exponent < 1:
            errors.append("bit-growth exponent must be positive")
        if errors:
            raise ConfigurationError(f"Configuration validation failed: {'; '.join(errors)}",
                                     details={"errors": errors})

    def threshold(self, n: int, d: int, d_prime: int) -> int:
        return self.field_size.threshold(n, d, d_prime)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "RunConfig":
        try:
            return cls(
                strategy=config.get("strategy", "greedy"),
                field_size=FieldSizeConfig(**config.get("field_size", {})),
                sampling=SamplingConfig(**config.get("sampling", {})),
                budgets=BudgetConfig(**config.get("budgets", {})),
                trace=TraceConfig(**config.get("trace", {})),
                check_basis_on_load=config.get("check_basis_on_load", True),
            )
        except TypeError as e:
            raise ConfigurationError(f"Unknown configuration key: {e}") from e


# Flat override names accepted by build_run_config
_OVERRIDE_PATHS = {
    "strategy": ("strategy",),
    "threshold_factor": ("field_size", "threshold_factor"),
    "threshold_margin": ("field_size", "threshold_margin"),
    "sample_budget": ("sampling", "sample_budget"),
    "local_search": ("sampling", "local_search"),
    "local_directions": ("sampling", "local_directions"),
    "seed": ("sampling", "seed"),
    "max_iterations": ("budgets", "max_iterations"),
    "dm_round_factor": ("budgets", "dm_round_factor"),
    "dm_reduce_data": ("budgets", "dm_reduce_data"),
    "max_extension_degree": ("budgets", "max_extension_degree"),
    "bit_growth_exponent": ("budgets", "bit_growth_exponent"),
    "trace_enabled": ("trace", "enabled"),
    "logs_dir": ("trace", "logs_dir"),
    "check_basis_on_load": ("check_basis_on_load",),
}


class ConfigurationManager:
    """Merges defaults, an optional JSON file, environment settings and explicit overrides"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = Path(config_file) if config_file else (
            Path(settings.config_file) if settings.config_file else None)
        self._config_cache: Dict[str, Any] = {}

    def load_configuration(self) -> Dict[str, Any]:
        """Load the merged configuration dictionary"""
        config = self._get_default_configuration()

        if self.config_file is not None and self.config_file.exists():
            config = self._merge_configurations(config, self._load_config_file())

        config = self._merge_configurations(config, self._load_environment_configuration())
        self._config_cache = config
        return config

    def _get_default_configuration(self) -> Dict[str, Any]:
        """Get default configuration values"""
        return RunConfig().to_dict()

    def _load_config_file(self) -> Dict[str, Any]:
        """Load configuration from JSON file"""
        try:
            with open(self.config_file, "r") as f:
                config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Failed to load config file {self.config_file}: {e}") from e
        if not isinstance(config, dict):
            raise ConfigurationError(f"Config file {self.config_file} must hold a JSON object")
        logger.info(f"Loaded configuration from {self.config_file}")
        return config

    def _load_environment_configuration(self) -> Dict[str, Any]:
        """Configuration values coming from NCRANK_* settings"""
        env_config: Dict[str, Any] = {}
        fields_set = settings.model_fields_set
        for name, path in _OVERRIDE_PATHS.items():
            if name in fields_set:
                self._assign(env_config, path, getattr(settings, name))
        return env_config

    @staticmethod
    def _assign(config: Dict[str, Any], path: tuple, value: Any) -> None:
        node = config
        for key in path[:-1]:
            node = node.setdefault(key, {})
        node[path[-1]] = value

    def _merge_configurations(self, base_config: Dict[str, Any], override_config: Dict[str, Any]) -> Dict[str, Any]:
        """Merge two configuration dictionaries"""
        merged = base_config.copy()

        for key, value in override_config.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_configurations(merged[key], value)
            else:
                merged[key] = value

        return merged

    def build_run_config(self, **overrides: Any) -> RunConfig:
        """Validated RunConfig; ``None`` overrides are ignored"""
        config = self.load_configuration()
        explicit: Dict[str, Any] = {}
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in _OVERRIDE_PATHS:
                raise ConfigurationError(f"Unknown configuration override: {name}")
            self._assign(explicit, _OVERRIDE_PATHS[name], value)
        config = self._merge_configurations(config, explicit)
        run_config = RunConfig.from_dict(config)
        logger.debug(f"Run configuration: {run_config.to_dict()}")
        return run_config

    def save_configuration(self, run_config: RunConfig, file_path: Optional[str] = None) -> str:
        """Write a RunConfig as JSON"""
        target = Path(file_path) if file_path else self.config_file
        if target is None:
            raise ConfigurationError("No configuration file path given")
        with open(target, "w") as f:
            json.dump(run_config.to_dict(), f, indent=2)
        logger.info(f"Configuration saved to {target}")
        return str(target)

    def get_configuration_summary(self) -> Dict[str, Any]:
        """Get configuration summary for diagnostics"""
        if not self._config_cache:
            self.load_configuration()
        return {
            "config_file": str(self.config_file) if self.config_file else None,
            "config_file_exists": bool(self.config_file and self.config_file.exists()),
            "strategy": self._config_cache.get("strategy"),
            "trace_enabled": self._config_cache.get("trace", {}).get("enabled", False),
        }


# Global configuration manager instance
config_manager = ConfigurationManager()
