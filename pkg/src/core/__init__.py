# Core application components

from .config_manager import (
    ConfigurationManager,
    RunConfig,
    FieldSizeConfig,
    SamplingConfig,
    BudgetConfig,
    TraceConfig,
    config_manager
)

from .errors import (
    NCRankError,
    DomainError,
    ShapeError,
    ArgumentError,
    SizeError,
    PreconditionError,
    HypothesisError,
    InternalError,
    ConfigurationError,
    InputFormatError
)

__all__ = [
    # Configuration Management
    "ConfigurationManager",
    "RunConfig",
    "FieldSizeConfig",
    "SamplingConfig",
    "BudgetConfig",
    "TraceConfig",
    "config_manager",

    # Errors
    "NCRankError",
    "DomainError",
    "ShapeError",
    "ArgumentError",
    "SizeError",
    "PreconditionError",
    "HypothesisError",
    "InternalError",
    "ConfigurationError",
    "InputFormatError",
]
