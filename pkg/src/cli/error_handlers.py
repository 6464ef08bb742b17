"""
Exit-status mapping and diagnostics for the ncrank command line
"""
import logging
import sys
from typing import Any, Dict, Optional, TextIO

from src.core.errors import (
    ConfigurationError,
    InputFormatError,
    InternalError,
    NCRankError,
)
from src.services.logging_service import logging_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3


class CLIErrorHandler:
    """Centralized CLI error handling"""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream

    def _emit(self, message: str) -> None:
        print(message, file=self.stream or sys.stderr)

    def handle(self, exc: BaseException, context: Optional[Dict[str, Any]] = None) -> int:
        """Print one diagnostic line and return the exit status for ``exc``"""
        if isinstance(exc, (InputFormatError, ConfigurationError)):
            logger.warning(f"Input error: {exc}")
            self._emit(f"error: {exc}")
            return EXIT_INPUT_ERROR

        if isinstance(exc, InternalError):
            logger.error(f"Internal error: {exc}")
            self._log(exc, context, "internal_error")
            self._emit(f"internal error: {exc}")
            return EXIT_INTERNAL_ERROR

        if isinstance(exc, (NCRankError, ValueError)):
            logger.warning(f"Rejected input: {exc}")
            self._emit(f"error: {exc}")
            return EXIT_INPUT_ERROR

        logger.error(f"Unhandled exception: {exc}", exc_info=True)
        self._log(exc, context, "unhandled_exception")
        self._emit(f"internal error: {type(exc).__name__}: {exc}")
        return EXIT_INTERNAL_ERROR

    def _log(self, exc: BaseException, context: Optional[Dict[str, Any]], label: str) -> None:
        try:
            logging_service.log_error(exc, {"context": label, **(context or {})})
        except Exception as log_error:
            logger.error(f"Failed to log error: {log_error}")
