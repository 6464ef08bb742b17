# Command line support

from .error_handlers import (
    CLIErrorHandler,
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED
)

__all__ = [
    "CLIErrorHandler",
    "EXIT_INPUT_ERROR",
    "EXIT_INTERNAL_ERROR",
    "EXIT_OK",
    "EXIT_VERIFICATION_FAILED",
]
