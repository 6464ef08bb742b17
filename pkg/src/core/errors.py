"""
Exception hierarchy for the non-commutative rank toolkit
"""
from typing import Any, Dict, List, Optional


class NCRankError(Exception):
    """Base class for all errors raised by the toolkit"""

    error_code = "NCRANK_ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error_code": self.error_code,
            "error_message": self.message,
            "details": self.details,
        }


class DomainError(NCRankError, ValueError):
    """Mixed or unsupported scalar domains"""

    error_code = "DOMAIN_ERROR"


class ShapeError(NCRankError, ValueError):
    """Matrix or blow-up shapes do not fit together"""

    error_code = "SHAPE_ERROR"


class ArgumentError(NCRankError, ValueError):
    """Invalid argument value"""

    error_code = "ARGUMENT_ERROR"


class SizeError(NCRankError):
    """The working field is smaller than a required threshold"""

    error_code = "FIELD_TOO_SMALL"

    def __init__(self, message: str, required: int, actual: Optional[int] = None):
        super().__init__(message, {"required": required, "actual": actual})
        self.required = required
        self.actual = actual


class PreconditionError(NCRankError, ValueError):
    """An operation was called outside its precondition"""

    error_code = "PRECONDITION_FAILED"


class HypothesisError(PreconditionError):
    """One or more hypotheses of a table conclusion are violated"""

    error_code = "HYPOTHESIS_VIOLATED"

    def __init__(self, violations: List[str]):
        super().__init__("; ".join(violations), {"violations": violations})
        self.violations = violations


class InternalError(NCRankError, RuntimeError):
    """A post-verification failed: signals an implementation bug"""

    error_code = "INTERNAL_ERROR"


class ConfigurationError(NCRankError, ValueError):
    """Invalid run configuration"""

    error_code = "CONFIGURATION_ERROR"


class InputFormatError(NCRankError, ValueError):
    """Malformed input file"""

    error_code = "INPUT_FORMAT_ERROR"

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if path:
            location.append(str(path))
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message,
                         {"path": path, "line": line, "field": field})
        self.path = path
        self.line = line
        self.field = field
