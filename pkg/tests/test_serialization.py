"""
Tests for the JSON file formats
"""
import json
from fractions import Fraction

import pytest

from src.algebra.fields import QQ, PrimeField
from src.core.errors import InputFormatError
from src.models.space import BlowupPoint
from src.services.driver import NCRankService
from src.services.logging_service import TraceLoggingService
from src.services.serialization import (
    certificate_to_dict,
    dump_space,
    field_from_spec,
    field_to_spec,
    load_certificate,
    load_space,
    parse_certificate,
    parse_point,
    parse_space,
    point_to_dict,
)
from src.services.spaces import verify_certificate
from src.services.towers import finite_field_extension


def space_text(basis, field=None, **extra):
    data = {"field": field or {"kind": "rationals"}, "k": 2, "basis": basis}
    data.update(extra)
    return json.dumps(data)


class TestSpaces:
    """Test matrix space files"""

    def test_square_default(self):
        """Test l defaults to k and rationals are exact"""
        B = parse_space(space_text([[["1/2", "0"], ["0", 3]]]))
        assert (B.k, B.l, B.m) == (2, 2, 1)
        assert B.basis[0][0, 0] == Fraction(1, 2)
        assert B.basis[0][1, 1] == Fraction(3)

    def test_prime_field_entries_reduced(self):
        """Test residues are reduced modulo p"""
        B = parse_space(space_text([[["5", "0"], ["0", "-1"]]], field={"kind": "prime", "p": 3}))
        assert B.field == PrimeField(3)
        assert B.basis[0][0, 0] == 2
        assert B.basis[0][1, 1] == 2

    def test_invalid_json_reports_line(self):
        """Test the line of a JSON syntax error is reported"""
        with pytest.raises(InputFormatError) as exc:
            parse_space('{\n  "k": 2,\n  oops\n}', path="space.json")
        assert exc.value.line == 3
        assert exc.value.path == "space.json"

    def test_bad_scalar_reports_field(self):
        """Test an inexact entry names its position"""
        with pytest.raises(InputFormatError) as exc:
            parse_space(space_text([[["1", "0"], [0.5, "0"]]]))
        assert exc.value.field == "basis.0.1.0"

    def test_missing_prime(self):
        """Test a prime field without p is rejected by the model"""
        with pytest.raises(InputFormatError) as exc:
            parse_space(space_text([[["1", "0"], ["0", "1"]]], field={"kind": "prime"}))
        assert exc.value.field == "field"

    def test_unknown_format_tag(self):
        """Test a foreign format tag is refused"""
        with pytest.raises(InputFormatError):
            parse_space(space_text([], format="ncrank/point"))

    def test_dump_and_load(self, tmp_path, skew3):
        """Test a written space loads back equal"""
        path = dump_space(skew3, str(tmp_path / "skew.json"))
        assert load_space(path) == skew3


class TestFields:
    """Test field descriptions"""

    def test_extension_field_description(self):
        """Test a finite extension is rebuilt with the same structure constants"""
        E = finite_field_extension(PrimeField(2), 3)
        spec = field_to_spec(E)
        assert spec.kind == "extension"
        assert field_from_spec(spec) == E

    def test_point_over_extension(self):
        """Test points carry their field"""
        E = finite_field_extension(PrimeField(3), 2)
        x = E.elements(4)[3]
        P = BlowupPoint.scalars(E, [x, E.one])
        Q = parse_point(json.dumps(point_to_dict(P)))
        assert Q == P

    def test_point_needs_field(self):
        """Test a point without field and without a default is rejected"""
        with pytest.raises(InputFormatError):
            parse_point(json.dumps({"a": 1, "b": 1, "coeffs": [[["1"]]]}))


class TestCertificates:
    """Test certificate files"""

    def setup_method(self):
        """Set up test fixtures"""
        self.service = NCRankService(trace_service=TraceLoggingService(enabled=False))

    def test_certificate_survives_file(self, tmp_path, span_e11_e12, run_config):
        """Test a written certificate still verifies after loading"""
        certificate = self.service.ncrank(span_e11_e12, run_config)
        path = tmp_path / "cert.json"
        path.write_text(json.dumps(certificate_to_dict(certificate), default=str))
        loaded = load_certificate(str(path))
        assert loaded.r == certificate.r
        assert isinstance(loaded.statistics, dict)
        assert verify_certificate(span_e11_e12, loaded).passed

    def test_witness_shape_mismatch(self, span_e11_e12, run_config):
        """Test d must match the witness shape"""
        data = certificate_to_dict(self.service.ncrank(span_e11_e12, run_config))
        data["d"] = 2
        with pytest.raises(InputFormatError) as exc:
            parse_certificate(json.dumps(data, default=str))
        assert exc.value.field == "point"

    def test_short_subspace_column(self, span_e11_e12, run_config):
        """Test subspace columns must have length n"""
        data = certificate_to_dict(self.service.ncrank(span_e11_e12, run_config))
        data["subspace"]["columns"] = [["1"]]
        with pytest.raises(InputFormatError) as exc:
            parse_certificate(json.dumps(data, default=str))
        assert exc.value.field == "subspace.columns.0"

    def test_rationals_are_strings(self, span_e11_e12):
        """Test scalars are written in canonical string form"""
        data = certificate_to_dict(self.service.ncrank(span_e11_e12))
        assert data["field"]["kind"] == "rationals"
        assert all(isinstance(x, str) for row in data["point"]["coeffs"][0] for x in row)
        assert QQ.parse(data["point"]["coeffs"][0][0][0]) == Fraction(1)
