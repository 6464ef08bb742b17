"""
Verification reports, run statistics and trace entries
"""
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional
import uuid


@dataclass
class CheckResult:
    """Outcome of one exact check"""
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    """Ordered list of exact checks; passes when every check passes"""
    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def summary(self) -> str:
        if self.passed:
            return f"{self.subject}: all {len(self.checks)} checks passed"
        failure = self.first_failure
        return f"{self.subject}: {failure.name} failed ({failure.detail})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class RunStatistics:
    """Counters collected over one nc-rank computation"""
    run_id: str = field(default_factory=lambda: str(uuid.uuid4()))
    iterations: int = 0
    shrunk_branches: int = 0
    increment_branches: int = 0
    max_d: int = 1
    max_bits: int = 0
    input_bits: int = 0
    bit_envelope: int = 0
    bit_envelope_breaches: int = 0
    dm_rounds: int = 0
    dm_fallbacks: int = 0
    greedy_steps: int = 0
    commutative_steps: int = 0
    reroutes: int = 0
    extension_degree: int = 1
    started_at: datetime = field(default_factory=datetime.utcnow)
    finished_at: Optional[datetime] = None

    def __post_init__(self):
        """Validate run statistics"""
        if self.iterations < 0:
            raise ValueError("Iteration count cannot be negative")

    def observe_d(self, d: int) -> None:
        self.max_d = max(self.max_d, d)

    def finish(self) -> None:
        self.finished_at = datetime.utcnow()

    @property
    def elapsed_ms(self) -> int:
        end = self.finished_at or datetime.utcnow()
        return int((end - self.started_at).total_seconds() * 1000)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "run_id": self.run_id,
            "iterations": self.iterations,
            "shrunk_branches": self.shrunk_branches,
            "increment_branches": self.increment_branches,
            "max_d": self.max_d,
            "max_bits": self.max_bits,
            "input_bits": self.input_bits,
            "bit_envelope": self.bit_envelope,
            "bit_envelope_breaches": self.bit_envelope_breaches,
            "dm_rounds": self.dm_rounds,
            "dm_fallbacks": self.dm_fallbacks,
            "greedy_steps": self.greedy_steps,
            "commutative_steps": self.commutative_steps,
            "reroutes": self.reroutes,
            "extension_degree": self.extension_degree,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class TraceEntry:
    """One per-iteration record of the main loop"""
    run_id: str
    iteration: int
    d: int
    r: int
    branch: str
    replacements: int = 0
    rank: Optional[int] = None
    max_bits: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)
    entry_id: str = field(default_factory=lambda: str(uuid.uuid4()))
    timestamp: datetime = field(default_factory=datetime.utcnow)

    def __post_init__(self):
        """Validate trace entry"""
        if not self.branch or not self.branch.strip():
            raise ValueError("Branch cannot be empty")
        if self.d < 1:
            raise ValueError("Blow-up degree must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "entry_id": self.entry_id,
            "run_id": self.run_id,
            "iteration": self.iteration,
            "d": self.d,
            "r": self.r,
            "branch": self.branch,
            "replacements": self.replacements,
            "rank": self.rank,
            "max_bits": self.max_bits,
            "extra": self.extra,
            "timestamp": self.timestamp.isoformat(),
        }


@dataclass
class ErrorLogEntry:
    """Log entry for failures surfaced to the operator"""
    error_id: str = field(default_factory=lambda: str(uuid.uuid4()))
    error_type: str = ""
    error_message: str = ""
    stack_trace: Optional[str] = None
    context: Dict[str, Any] = field(default_factory=dict)
    timestamp: datetime = field(default_factory=datetime.utcnow)

    def __post_init__(self):
        """Validate error log entry"""
        if not self.error_type or not self.error_type.strip():
            raise ValueError("Error type cannot be empty")
        if not self.error_message or not self.error_message.strip():
            raise ValueError("Error message cannot be empty")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error_id": self.error_id,
            "error_type": self.error_type,
            "error_message": self.error_message,
            "stack_trace": self.stack_trace,
            "context": self.context,
            "timestamp": self.timestamp.isoformat(),
        }
