"""
Tests for the ncrank command line
"""
import json

import pytest

from main import build_parser, cli_main
from src.cli.error_handlers import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    CLIErrorHandler,
)
from src.core.errors import InputFormatError, InternalError

SPAN_E11_E12 = {
    "format": "ncrank/space",
    "field": {"kind": "rationals"},
    "k": 2,
    "basis": [[["1", "0"], ["0", "0"]], [["0", "1"], ["0", "0"]]],
}


@pytest.fixture
def space_file(tmp_path):
    path = tmp_path / "space.json"
    path.write_text(json.dumps(SPAN_E11_E12))
    return path


@pytest.fixture
def certificate_file(tmp_path, space_file):
    path = tmp_path / "certificate.json"
    assert cli_main(["compute", str(space_file), "--out", str(path)]) == EXIT_OK
    return path


class TestCompute:
    """Test the compute command"""

    def test_compute_to_stdout(self, space_file, capsys):
        """Test the certificate is printed as JSON"""
        assert cli_main(["compute", str(space_file)]) == EXIT_OK
        captured = capsys.readouterr()
        certificate = json.loads(captured.out)
        assert certificate["format"] == "ncrank/certificate"
        assert certificate["r"] == 1
        assert certificate["subspace"]["s"] >= 1
        assert "r = 1" in captured.err

    def test_compute_to_file(self, certificate_file):
        """Test --out writes the certificate"""
        data = json.loads(certificate_file.read_text())
        assert data["r"] == 1
        assert data["statistics"]["iterations"] == 1

    def test_missing_file(self, tmp_path, capsys):
        """Test an unreadable input is an input error"""
        assert cli_main(["compute", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR
        assert "cannot read file" in capsys.readouterr().err

    def test_malformed_space(self, tmp_path, capsys):
        """Test a basis matrix of the wrong shape names the problem"""
        bad = dict(SPAN_E11_E12, basis=[[["1", "0"]]])
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        assert cli_main(["compute", str(path)]) == EXIT_INPUT_ERROR
        assert "not 2x2" in capsys.readouterr().err

    def test_rectangular_space(self, tmp_path):
        """Test non-square input is rejected with the input status"""
        path = tmp_path / "rect.json"
        path.write_text(json.dumps({"field": {"kind": "rationals"}, "k": 1, "l": 2, "basis": [[["1", "0"]]]}))
        assert cli_main(["compute", str(path)]) == EXIT_INPUT_ERROR


class TestVerify:
    """Test the verify command"""

    def test_valid_certificate(self, space_file, certificate_file, capsys):
        """Test a computed certificate verifies"""
        assert cli_main(["verify", str(space_file), str(certificate_file)]) == EXIT_OK
        assert "all" in capsys.readouterr().out

    def test_tampered_rank(self, space_file, certificate_file, capsys):
        """Test raising the claimed rank fails verification"""
        data = json.loads(certificate_file.read_text())
        data["r"] = 2
        certificate_file.write_text(json.dumps(data))
        assert cli_main(["verify", str(space_file), str(certificate_file)]) == EXIT_VERIFICATION_FAILED
        assert "witness rank failed" in capsys.readouterr().out

    def test_degree_bound_flag(self, space_file, certificate_file):
        """Test --d-bound below d fails"""
        data = json.loads(certificate_file.read_text())
        data["d"] = 3
        data["point"] = {"a": 3, "b": 3, "coeffs": [
            [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
        ]}
        certificate_file.write_text(json.dumps(data))
        args = ["verify", str(space_file), str(certificate_file)]
        assert cli_main(args + ["--d-bound", "2"]) == EXIT_VERIFICATION_FAILED
        assert cli_main(args + ["--d-bound", "3"]) == EXIT_OK


class TestOtherCommands:
    """Test blowup-rank, build-extension and oracle"""

    def test_blowup_rank(self, tmp_path, space_file, capsys):
        """Test the assembled rank of I2 (x) E11 + 0 (x) E12"""
        point = tmp_path / "point.json"
        point.write_text(json.dumps({"a": 2, "b": 2, "coeffs": [[["1", "0"], ["0", "1"]], [["0", "0"], ["0", "0"]]]}))
        assert cli_main(["blowup-rank", str(space_file), str(point)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "2"

    def test_build_extension(self, tmp_path):
        """Test a degree-2 extension over the rationals is written"""
        out = tmp_path / "ext.json"
        assert cli_main(["build-extension", "--char", "0", "--degree", "2", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        assert data["degree"] == 2
        assert data["characteristic"] == 0
        assert len(data["sigma"]) == 2

    def test_build_extension_bad_characteristic(self):
        """Test a composite characteristic is an input error"""
        assert cli_main(["build-extension", "--char", "4", "--degree", "2"]) == EXIT_INPUT_ERROR

    def test_oracle(self, tmp_path, capsys):
        """Test the exhaustive oracle over GF(2)"""
        path = tmp_path / "gf2.json"
        path.write_text(json.dumps(dict(SPAN_E11_E12, field={"kind": "prime", "p": 2})))
        assert cli_main(["oracle", str(path)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "1"

    def test_parser_requires_command(self):
        """Test a missing subcommand exits through argparse"""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestErrorHandler:
    """Test the exit-status mapping"""

    def test_input_error(self, capsys):
        """Test input errors map to 2"""
        handler = CLIErrorHandler()
        assert handler.handle(InputFormatError("bad", path="x.json")) == EXIT_INPUT_ERROR
        assert "error:" in capsys.readouterr().err

    def test_internal_error(self, monkeypatch):
        """Test internal errors map to 3 and are logged"""
        logged = []
        monkeypatch.setattr("src.cli.error_handlers.logging_service.log_error",
                            lambda exc, context=None: logged.append(exc))
        error = InternalError("broken")
        assert CLIErrorHandler().handle(error) == EXIT_INTERNAL_ERROR
        assert logged == [error]

    def test_value_error(self):
        """Test plain value errors are treated as rejected input"""
        assert CLIErrorHandler().handle(ValueError("nope")) == EXIT_INPUT_ERROR
