"""
Tests for assembly, shrunk subspaces and certificate verification
"""
from fractions import Fraction

import pytest

from src.algebra.fields import QQ, PrimeField
from src.algebra.matrix import Matrix
from src.core.errors import ArgumentError, PreconditionError, ShapeError
from src.models.space import BlowupPoint, Certificate, ShrunkSubspace, Window
from src.services.spaces import (
    assemble,
    assembled_rank,
    blowup_space,
    compress_shrunk,
    lift_shrunk,
    reduce_coefficients,
    shrink_value,
    verify_certificate,
    verify_window,
)


def column(*values):
    return Matrix.from_columns(QQ, [[Fraction(v) for v in values]], len(values))


class TestAssembly:
    """Test assembled blow-up matrices"""

    def test_scalar_point(self, skew3):
        """Test a d = 1 point is the linear combination"""
        P = BlowupPoint.scalars(QQ, [1, 0, 0])
        M = assemble(skew3, P)
        assert M == skew3.basis[0]
        assert assembled_rank(skew3, P) == 2

    def test_blowup_shape(self, skew3):
        """Test (d, d) points give (3d) x (3d) matrices"""
        P = BlowupPoint(2, 2, tuple(Matrix.identity(QQ, 2) for _ in range(3)))
        assert assemble(skew3, P).shape == (6, 6)

    def test_coefficient_count_checked(self, skew3):
        """Test a point with the wrong number of coefficients is refused"""
        with pytest.raises(ShapeError):
            assemble(skew3, BlowupPoint.scalars(QQ, [1, 1]))

    def test_blowup_space(self, span_e11):
        """Test the blow-up has m d^2 basis matrices"""
        Bd = blowup_space(span_e11, 2)
        assert Bd.m == 4
        assert (Bd.k, Bd.l) == (4, 4)
        assert Bd.is_independent()


class TestShrunkSubspaces:
    """Test shrink values, lifting and compression"""

    def test_shrink_value(self, span_e11, span_e11_e12):
        """Test dim V - dim B(V) on the standard examples"""
        assert shrink_value(span_e11, column(0, 1)) == 1
        assert shrink_value(span_e11, column(1, 0)) == 0
        assert shrink_value(span_e11_e12, Matrix.identity(QQ, 2)) == 1

    def test_lift_and_compress(self, span_e11):
        """Test U (x) F^d shrinks by s d and compresses back to U"""
        U = ShrunkSubspace(V=column(0, 1), s=1)
        lifted = lift_shrunk(U, 3, span_e11)
        assert lifted.s == 3
        assert shrink_value(blowup_space(span_e11, 3), lifted.V) == 3
        compressed = compress_shrunk(lifted, span_e11, 3)
        assert compressed.dim == 1
        assert compressed.s == 1

    def test_lift_requires_positive_shrink(self):
        """Test a 0-shrunk subspace is not lifted"""
        with pytest.raises(PreconditionError):
            lift_shrunk(ShrunkSubspace(V=column(1, 0), s=0), 2)

    def test_lift_rechecks_claim(self, span_e11):
        """Test an overstated shrink is caught when the space is given"""
        with pytest.raises(PreconditionError):
            lift_shrunk(ShrunkSubspace(V=column(1, 0), s=1), 2, span_e11)


class TestCoefficientReduction:
    """Test replacement of coefficients by small sample elements"""

    def test_reduce_keeps_rank(self, skew3):
        """Test large rational coefficients are replaced without losing rank"""
        P = BlowupPoint.scalars(QQ, [Fraction(7, 3), Fraction(-5), Fraction(11, 2)])
        reduced = reduce_coefficients(skew3, P, 2)
        assert assembled_rank(skew3, reduced) >= 2
        allowed = set(QQ.elements(3))
        assert all(T[0, 0] in allowed for T in reduced.coeffs)

    def test_sample_set_too_small(self, skew3):
        """Test |S| must exceed r"""
        P = BlowupPoint.scalars(QQ, [1, 0, 0])
        with pytest.raises(ArgumentError):
            reduce_coefficients(skew3, P, 2, S=[Fraction(0), Fraction(1)])


class TestVerification:
    """Test exact verification of windows and certificates"""

    def setup_method(self):
        """Set up test fixtures"""
        self.point = BlowupPoint.scalars(QQ, [1, 0])
        self.subspace = ShrunkSubspace(V=Matrix.identity(QQ, 2), s=1)

    def test_window(self, skew3):
        """Test a nonsingular and a singular window"""
        P = BlowupPoint.scalars(QQ, [1, 0, 0])
        assert verify_window(skew3, P, Window((0, 1), (0, 1)))
        assert not verify_window(skew3, P, Window((0, 2), (0, 2)))

    def test_valid_certificate(self, span_e11_e12):
        """Test r = 1 with the whole space as shrunk subspace"""
        C = Certificate(r=1, d=1, point=self.point, subspace=self.subspace, field=QQ)
        report = verify_certificate(span_e11_e12, C)
        assert report.passed, report.summary()

    def test_tampered_rank(self, span_e11_e12):
        """Test a claimed rank the witness does not reach"""
        C = Certificate(r=2, d=1, point=self.point, subspace=self.subspace, field=QQ)
        report = verify_certificate(span_e11_e12, C)
        assert not report.passed
        assert report.first_failure.name == "witness rank"

    def test_degree_bound(self, span_e11_e12):
        """Test d above the bound is rejected"""
        I3 = Matrix.identity(QQ, 3)
        P = BlowupPoint(3, 3, (I3, Matrix.zeros(QQ, 3, 3)))
        C = Certificate(r=1, d=3, point=P, subspace=self.subspace, field=QQ)
        assert not verify_certificate(span_e11_e12, C).passed
        assert verify_certificate(span_e11_e12, C, d_bound=3).passed

    def test_insufficient_shrink(self, span_e11_e12):
        """Test a subspace that does not shrink enough"""
        C = Certificate(r=1, d=1, point=self.point,
                        subspace=ShrunkSubspace(V=column(1, 0), s=1), field=QQ)
        report = verify_certificate(span_e11_e12, C)
        assert report.first_failure.name == "shrink"

    def test_point_over_other_field(self, span_e11_e12):
        """Test a witness over a different field is refused"""
        F = PrimeField(2)
        P = BlowupPoint.scalars(F, [1, 0])
        C = Certificate(r=1, d=1, point=P, subspace=self.subspace, field=QQ)
        report = verify_certificate(span_e11_e12, C)
        assert report.first_failure.name == "point field"
