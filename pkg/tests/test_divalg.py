"""
Tests for cyclic division algebra bases
"""
from dataclasses import replace
from fractions import Fraction

import pytest

from src.algebra.fields import QQ, PrimeField, RatFuncField
from src.algebra.matrix import Matrix, mat_rank
from src.core.errors import PreconditionError
from src.services.divalg import (
    build_division_algebra,
    evaluation_rank,
    sample_division_property,
    specialize,
    verify_division_relations,
)
from src.services.towers import build_cyclic_extension, ensure_root_of_unity


def algebra(p, d):
    """Division algebra of degree d over GF(p)(X), with a root of unity when Kummer needs one"""
    F = PrimeField(p)
    zeta = None
    if d % p:
        d1 = d
        while d1 % p == 0:
            d1 //= p
        if d1 > 2:
            zeta = ensure_root_of_unity(F, d1)[1]
    return build_division_algebra(build_cyclic_extension(F, d, zeta=zeta))


def without_y(D):
    """The same basis with u replaced by the twist itself"""
    d = D.d
    C = D.twist.lift(D.field)
    powers = [Matrix.identity(D.field, d)]
    for _ in range(1, d):
        powers.append(powers[-1] @ C)
    gamma = [D.regular[j].lift(D.field) @ powers[i] for i in range(d) for j in range(d)]
    return replace(D, gamma=gamma)


class TestDivisionAlgebra:
    """Test construction and verification of Gamma"""

    def setup_method(self):
        """Set up test fixtures"""
        self.ext = build_cyclic_extension(QQ, 2)
        self.D = build_division_algebra(self.ext)

    def test_basis_shape(self):
        """Test d^2 matrices of size d x d over K(Y)"""
        assert self.D.d == 2
        assert len(self.D.gamma) == 4
        assert all(g.shape == (2, 2) for g in self.D.gamma)
        assert self.D.gamma[0] == Matrix.identity(self.D.field, 2)

    def test_relations_hold(self):
        """Test span, closure, twist, centrality and sampled invertibility"""
        report = verify_division_relations(self.D, samples=5)
        assert report.passed, report.summary()
        names = [c.name for c in report.checks]
        assert names == ["span", "closure", "twist", "u^d = Y^d I", "division sampling"]

    def test_relations_over_finite_field(self):
        """Test the quadratic construction over GF(3)"""
        D = build_division_algebra(build_cyclic_extension(PrimeField(3), 2))
        assert verify_division_relations(D, samples=3).passed

    def test_asw_algebra_over_gf2(self):
        """Test the degree-2 Artin-Schreier algebra over GF(2)"""
        D = build_division_algebra(build_cyclic_extension(PrimeField(2), 2))
        report = verify_division_relations(D, samples=3)
        assert report.passed, report.summary()

    @pytest.mark.parametrize("p,d", [(7, 3), (3, 3)])
    def test_degree_three(self, p, d):
        """Test Kummer and Artin-Schreier algebras of degree 3"""
        D = algebra(p, d)
        assert D.d == 3
        report = verify_division_relations(D, samples=5)
        assert report.passed, report.summary()

    @pytest.mark.parametrize("p", [5, 2])
    def test_degree_four(self, p):
        """Test degree 4 by Kummer over GF(5) and by a Witt tower over GF(2)"""
        D = algebra(p, 4)
        assert D.d == 4
        report = verify_division_relations(D, samples=3)
        assert report.passed, report.summary()

    @pytest.mark.slow
    @pytest.mark.parametrize("p,d", [(3, 2), (2, 2), (7, 3), (3, 3), (5, 4), (2, 4)])
    def test_hundred_samples(self, p, d):
        """Test 100 random elements are invertible for d up to 4"""
        D = algebra(p, d)
        ok, failure = sample_division_property(D, samples=100, seed=d)
        assert ok, failure

    def test_zeroed_element_fails_span(self):
        """Test a basis with one zero matrix does not span"""
        gamma = list(self.D.gamma)
        gamma[3] = Matrix.zeros(self.D.field, 2, 2)
        report = verify_division_relations(replace(self.D, gamma=gamma), samples=1)
        assert not report.passed
        assert report.first_failure.name == "span"
        assert "rank of Gamma is 3" in report.first_failure.detail

    def test_twist_without_y_fails_division(self):
        """Test the split algebra spanned by rho(b) C^i has zero divisors"""
        D = without_y(self.D)
        ok, failure = sample_division_property(D, samples=2)
        assert not ok
        assert "element 0" in failure
        report = verify_division_relations(D, samples=2)
        failed = {c.name for c in report.checks if not c.passed}
        assert failed == {"u^d = Y^d I", "division sampling"}

    def test_twist_without_y_fails_in_char_two(self):
        """Test the same degeneration is caught over GF(2)"""
        D = without_y(algebra(2, 2))
        ok, _ = sample_division_property(D, samples=1)
        assert not ok

    def test_specialize_spans_matrix_algebra(self):
        """Test a generic specialization spans all 2 x 2 matrices"""
        mats = specialize(self.D, Fraction(2), Fraction(3))
        assert len(mats) == 4
        flat = Matrix.from_columns(QQ, [list(M.entries) for M in mats], 4)
        assert mat_rank(flat) == 4

    def test_broken_extension_rejected(self):
        """Test invariants are checked before building"""
        ext = build_cyclic_extension(QQ, 2)
        ext.sigma = Matrix.identity(ext.base, 2)
        ext._powers.clear()
        with pytest.raises(PreconditionError):
            build_division_algebra(ext)

    def test_trivial_degree(self):
        """Test degree 1 gives the single identity matrix"""
        D = build_division_algebra(build_cyclic_extension(QQ, 1))
        assert D.d == 1
        assert len(D.gamma) == 1


class TestEvaluationRank:
    """Test exact ranks over F(X)(Y) by evaluation"""

    def setup_method(self):
        """Set up test fixtures"""
        self.K = RatFuncField(QQ, "X")
        self.KY = RatFuncField(self.K, "Y")
        self.X = self.KY.embed(self.K.variable())
        self.Y = self.KY.variable()

    def test_full_rank(self):
        """Test [[X, Y], [1, X]] is invertible"""
        KY = self.KY
        M = Matrix.from_rows(KY, [[self.X, self.Y], [KY.one, self.X]])
        assert evaluation_rank(M, QQ) == 2

    def test_singular_determinant(self):
        """Test [[X, XY], [1, Y]] has rank 1 although every entry is nonzero"""
        KY = self.KY
        M = Matrix.from_rows(KY, [[self.X, KY.mul(self.X, self.Y)], [KY.one, self.Y]])
        assert evaluation_rank(M, QQ) == 1

    def test_poles_skipped(self):
        """Test entries with poles at small points still give the exact rank"""
        KY = self.KY
        inverse_x = KY.inv(self.X)
        inverse_y = KY.inv(self.Y)
        M = Matrix.from_rows(KY, [[inverse_x, inverse_y], [inverse_y, inverse_x]])
        assert evaluation_rank(M, QQ) == 2

    def test_small_field_uses_extension(self):
        """Test X^2 + X over GF(2)(X) is nonzero although it vanishes on GF(2)"""
        F = PrimeField(2)
        K = RatFuncField(F, "X")
        KY = RatFuncField(K, "Y")
        x = K.variable()
        value = KY.embed(K.add(K.mul(x, x), x))
        assert evaluation_rank(Matrix.from_rows(KY, [[value]]), F) == 1

    def test_zero_matrix(self):
        """Test the zero matrix has rank 0"""
        assert evaluation_rank(Matrix.zeros(self.KY, 2, 3), QQ) == 0
