"""
Tests for the trace and error log files
"""
import json

from src.models.reports import RunStatistics, TraceEntry
from src.services.logging_service import TraceLoggingService


class TestTraceLoggingService:
    """Test JSON-lines output"""

    def setup_method(self):
        """Set up test fixtures"""
        self.statistics = RunStatistics()

    def test_disabled_writes_nothing(self, tmp_path):
        """Test traces are skipped when disabled"""
        service = TraceLoggingService(logs_dir=str(tmp_path), enabled=False)
        entry = TraceEntry(run_id=self.statistics.run_id, iteration=1, d=1, r=1, branch="shrunk")
        assert service.log_trace(entry) is None
        assert not (tmp_path / "trace.jsonl").exists()

    def test_trace_filtered_by_run(self, tmp_path):
        """Test records of two runs are told apart"""
        service = TraceLoggingService(logs_dir=str(tmp_path), enabled=True)
        other = RunStatistics()
        service.log_trace(TraceEntry(run_id=self.statistics.run_id, iteration=1, d=2, r=2, branch="increment"))
        service.log_trace(TraceEntry(run_id=other.run_id, iteration=1, d=1, r=1, branch="shrunk"))
        service.log_run(self.statistics, {"r": 2})
        records = service.read_trace(self.statistics.run_id)
        service.close()
        assert [r["log_type"] for r in records] == ["iteration", "run"]
        assert records[0]["d"] == 2

    def test_malformed_lines_skipped(self, tmp_path):
        """Test a corrupted trace line does not break reading"""
        (tmp_path / "trace.jsonl").write_text('{"log_type": "run", "run_id": "x"}\nnot json\n')
        service = TraceLoggingService(logs_dir=str(tmp_path))
        assert len(service.read_trace()) == 1

    def test_error_log(self, tmp_path):
        """Test errors are written with their context"""
        service = TraceLoggingService(logs_dir=str(tmp_path), enabled=False)
        error_id = service.log_error(RuntimeError("boom"), {"command": "compute"})
        service.close()
        line = (tmp_path / "errors.jsonl").read_text().strip().splitlines()[-1]
        record = json.loads(line)
        assert record["error_id"] == error_id
        assert record["context"]["command"] == "compute"
