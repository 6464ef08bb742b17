"""
File-based trace and error logging for nc-rank computations
"""
from datetime import datetime
from typing import Any, Dict, List, Optional
import json
import logging
import traceback
import uuid
from logging.handlers import RotatingFileHandler
from pathlib import Path

from src.config.settings import settings
from src.models.reports import ErrorLogEntry, RunStatistics, TraceEntry

logger = logging.getLogger(__name__)


class TraceLoggingService:
    """JSON-lines trace and error logs with rotation.

    File handlers are attached on first write so that importing the service
    never touches the filesystem.
    """

    def __init__(self, logs_dir: Optional[str] = None, enabled: Optional[bool] = None):
        self.logs_dir = Path(logs_dir or settings.logs_dir)
        self.enabled = settings.trace_enabled if enabled is None else enabled
        self.trace_logger: Optional[logging.Logger] = None
        self.errors_logger: Optional[logging.Logger] = None
        self._handlers: List[logging.Handler] = []

    def configure(self, logs_dir: Optional[str] = None, enabled: Optional[bool] = None) -> None:
        """Point the service at another directory and/or toggle tracing"""
        if logs_dir is not None and Path(logs_dir) != self.logs_dir:
            self.close()
            self.logs_dir = Path(logs_dir)
        if enabled is not None:
            self.enabled = enabled

    def _setup_file_loggers(self) -> None:
        """Setup file-based loggers with rotation"""
        if self.trace_logger is not None:
            return
        try:
            self.logs_dir.mkdir(parents=True, exist_ok=True)
            suffix = uuid.uuid4().hex[:8]

            self.trace_logger = logging.getLogger(f"ncrank.trace.{suffix}")
            self.trace_logger.setLevel(logging.INFO)
            self.trace_logger.propagate = False
            trace_handler = RotatingFileHandler(
                self.logs_dir / "trace.jsonl",
                maxBytes=settings.log_max_bytes,
                backupCount=settings.log_backup_count,
            )
            trace_handler.setFormatter(logging.Formatter("%(message)s"))
            self.trace_logger.addHandler(trace_handler)

            self.errors_logger = logging.getLogger(f"ncrank.errors.{suffix}")
            self.errors_logger.setLevel(logging.ERROR)
            self.errors_logger.propagate = False
            errors_handler = RotatingFileHandler(
                self.logs_dir / "errors.jsonl",
                maxBytes=settings.log_max_bytes,
                backupCount=settings.log_backup_count,
            )
            errors_handler.setFormatter(logging.Formatter("%(message)s"))
            self.errors_logger.addHandler(errors_handler)

            self._handlers = [trace_handler, errors_handler]
            logger.debug(f"File-based logging initialized in {self.logs_dir}")
        except OSError as e:
            logger.error(f"Failed to setup file loggers: {e}")
            raise

    def close(self) -> None:
        for handler in self._handlers:
            handler.close()
        for lg in (self.trace_logger, self.errors_logger):
            if lg is not None:
                lg.handlers.clear()
        self._handlers = []
        self.trace_logger = None
        self.errors_logger = None

    def log_trace(self, entry: TraceEntry) -> Optional[str]:
        """Append one iteration record when tracing is enabled"""
        logger.info(
            f"iteration {entry.iteration}: d={entry.d} r={entry.r} branch={entry.branch} "
            f"replacements={entry.replacements}"
        )
        if not self.enabled:
            return None
        self._setup_file_loggers()
        record = entry.to_dict()
        record["log_type"] = "iteration"
        self.trace_logger.info(json.dumps(record))
        return entry.entry_id

    def log_run(self, statistics: RunStatistics, result: Dict[str, Any]) -> Optional[str]:
        """Append the summary of a finished computation"""
        if not self.enabled:
            return None
        self._setup_file_loggers()
        record = {
            "timestamp": datetime.utcnow().isoformat(),
            "log_type": "run",
            "statistics": statistics.to_dict(),
            "result": result,
        }
        self.trace_logger.info(json.dumps(record))
        return statistics.run_id

    def log_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> str:
        """Log an error with context information"""
        try:
            entry = ErrorLogEntry(
                error_type=type(error).__name__,
                error_message=str(error) or type(error).__name__,
                stack_trace=traceback.format_exc(),
                context=context or {},
            )
            self._setup_file_loggers()
            self.errors_logger.error(json.dumps(entry.to_dict(), default=str))
            logger.error(f"Error logged: {entry.error_id} - {entry.error_message}")
            return entry.error_id
        except Exception as e:
            logger.critical(f"Failed to log error to file: {e}. Original error: {error}")
            return "failed_to_log"

    def read_trace(self, run_id: Optional[str] = None) -> List[Dict[str, Any]]:
        """Records of the current trace file, optionally filtered by run"""
        path = self.logs_dir / "trace.jsonl"
        if not path.exists():
            return []
        records = []
        with open(path, "r") as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    logger.warning(f"Skipping malformed trace line in {path}")
                    continue
                rid = record.get("run_id") or record.get("statistics", {}).get("run_id")
                if run_id is None or rid == run_id:
                    records.append(record)
        return records


# Global logging service instance
logging_service = TraceLoggingService()
