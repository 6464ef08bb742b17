"""
Tests for exact scalar domains, polynomials and matrix algebra
"""
from fractions import Fraction

import pytest

from src.algebra.fields import QQ, ExtensionField, PrimeField, RatFuncField
from src.algebra.matrix import (
    Matrix,
    column_basis,
    kron,
    mat_inverse,
    mat_kernel,
    mat_preimage,
    mat_rank,
    mat_solve,
    nonsingular_submatrix,
)
from src.algebra.poly import Poly, RatFunc, poly_gcd, poly_xgcd
from src.core.errors import ArgumentError, DomainError, ShapeError


def gaussian_rationals():
    """Q(i) with basis 1, i"""
    sc = [[[QQ.zero] * 2 for _ in range(2)] for _ in range(2)]
    sc[0][0][0] = Fraction(1)
    sc[0][1][1] = Fraction(1)
    sc[1][0][1] = Fraction(1)
    sc[1][1][0] = Fraction(-1)
    return ExtensionField(QQ, 2, sc, label="i")


def split_algebra():
    """Q[x]/(x^2 - 1), which has zero divisors"""
    sc = [[[QQ.zero] * 2 for _ in range(2)] for _ in range(2)]
    sc[0][0][0] = Fraction(1)
    sc[0][1][1] = Fraction(1)
    sc[1][0][1] = Fraction(1)
    sc[1][1][0] = Fraction(1)
    return ExtensionField(QQ, 2, sc, label="split")


class TestScalarDomains:
    """Test rationals, prime fields and extensions"""

    def test_rational_parse_and_format(self):
        """Test canonical rational strings"""
        assert QQ.parse("3/6") == Fraction(1, 2)
        assert QQ.format(Fraction(-4, 2)) == "-2"
        assert QQ.parse(7) == Fraction(7)

    def test_rational_rejects_floats(self):
        """Test inexact input is refused"""
        with pytest.raises(ArgumentError):
            QQ.parse(0.5)
        with pytest.raises(ArgumentError):
            QQ.parse(True)

    def test_prime_field_requires_prime(self):
        """Test non-prime moduli are rejected"""
        with pytest.raises(ArgumentError):
            PrimeField(15)

    def test_prime_field_inverse(self):
        """Test inverses modulo 7"""
        F = PrimeField(7)
        for a in range(1, 7):
            assert F.mul(a, F.inv(a)) == 1
        assert F.parse("-1") == 6

    def test_extension_arithmetic(self):
        """Test i * i = -1 and inverses in Q(i)"""
        E = gaussian_rationals()
        i = E.basis_element(1)
        assert E.eq(E.mul(i, i), E.from_int(-1))
        x = (Fraction(3), Fraction(4))
        assert E.eq(E.mul(x, E.inv(x)), E.one)
        assert E.check_axioms() == []

    def test_extension_zero_divisor(self):
        """Test a zero divisor is reported as a domain error"""
        A = split_algebra()
        with pytest.raises(DomainError):
            A.inv((Fraction(1), Fraction(1)))

    def test_extension_elements_over_finite_base(self):
        """Test enumeration of a finite extension is duplicate-free"""
        F = PrimeField(2)
        sc = [[[0] * 2 for _ in range(2)] for _ in range(2)]
        # GF(4) = F2[t]/(t^2 + t + 1)
        sc[0][0][0] = 1
        sc[0][1][1] = 1
        sc[1][0][1] = 1
        sc[1][1][0] = 1
        sc[1][1][1] = 1
        E = ExtensionField(F, 2, sc)
        elements = E.elements(4)
        assert len({tuple(x) for x in elements}) == 4
        assert E.order() == 4
        with pytest.raises(ArgumentError):
            E.elements(5)

    def test_coerce_along_base_chain(self):
        """Test base elements embed into extensions and function fields"""
        E = gaussian_rationals()
        K = RatFuncField(E, "X")
        c = K.coerce(Fraction(2), QQ)
        assert c.is_constant()
        assert E.eq(K.project(c), E.from_int(2))


class TestPolynomials:
    """Test univariate polynomials and rational functions"""

    def test_divmod(self):
        """Test division with remainder"""
        f = Poly(QQ, [Fraction(-1), Fraction(0), Fraction(1)])  # x^2 - 1
        g = Poly(QQ, [Fraction(-1), Fraction(1)])  # x - 1
        q, r = divmod(f, g)
        assert r.is_zero()
        assert q == Poly(QQ, [Fraction(1), Fraction(1)])

    def test_gcd_and_xgcd(self):
        """Test gcd is monic and Bezout coefficients combine to it"""
        f = Poly(QQ, [Fraction(-1), Fraction(0), Fraction(1)])
        g = Poly(QQ, [Fraction(2), Fraction(2)])
        assert poly_gcd(f, g) == Poly(QQ, [Fraction(1), Fraction(1)])
        gcd, s, t = poly_xgcd(f, g)
        assert s * f + t * g == gcd

    def test_ratfunc_reduces(self):
        """Test rational functions are kept in lowest terms"""
        x = Poly.x(QQ)
        one = Poly.constant(QQ, Fraction(1))
        r = RatFunc(x * x - one, x - one)
        assert r.is_polynomial()
        assert r.evaluate(Fraction(2)) == Fraction(3)

    def test_powmod(self):
        """Test modular exponentiation over GF(2)"""
        F = PrimeField(2)
        modulus = Poly(F, [1, 1, 1])  # t^2 + t + 1
        t = Poly.x(F)
        assert t.powmod(3, modulus).is_one()


class TestMatrices:
    """Test exact linear algebra"""

    def setup_method(self):
        """Set up test fixtures"""
        self.A = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])

    def test_rank_and_kernel(self):
        """Test rank-nullity on a singular matrix"""
        assert mat_rank(self.A) == 2
        K = mat_kernel(self.A)
        assert K.cols == 1
        assert (self.A @ K).is_zero()

    def test_solve(self):
        """Test consistent and inconsistent systems"""
        x = mat_solve(self.A, [Fraction(6), Fraction(12), Fraction(2)])
        assert x is not None
        assert self.A.apply(x) == [Fraction(6), Fraction(12), Fraction(2)]
        assert mat_solve(self.A, [Fraction(1), Fraction(0), Fraction(0)]) is None

    def test_preimage_contains_kernel(self):
        """Test the preimage of zero is the kernel"""
        W = Matrix.zeros(QQ, 3, 0)
        assert mat_preimage(self.A, W).cols == 1
        with pytest.raises(ShapeError):
            mat_preimage(self.A, Matrix.zeros(QQ, 2, 1))

    def test_inverse(self):
        """Test the inverse of an invertible matrix"""
        M = Matrix.from_rows(QQ, [[2, 1], [1, 1]])
        assert M @ mat_inverse(M) == Matrix.identity(QQ, 2)

    def test_kron_shape_and_rank(self):
        """Test Kronecker products multiply ranks"""
        K = kron(self.A, Matrix.identity(QQ, 2))
        assert K.shape == (6, 6)
        assert mat_rank(K) == 4

    def test_mixed_rings_rejected(self):
        """Test arithmetic across scalar domains fails loudly"""
        M = Matrix.identity(PrimeField(3), 3)
        with pytest.raises(DomainError):
            self.A + M

    def test_nonsingular_submatrix(self):
        """Test the selected rows and columns give a full-rank block"""
        rows, cols = nonsingular_submatrix(self.A)
        assert len(rows) == len(cols) == 2
        assert mat_rank(self.A.submatrix(rows, cols)) == 2

    def test_column_basis(self):
        """Test redundant columns are dropped"""
        assert column_basis(self.A).cols == 2

    def test_prime_field_rank(self):
        """Test rank depends on the characteristic"""
        rows = [[1, 1], [1, -1]]
        assert mat_rank(Matrix.from_rows(QQ, rows)) == 2
        F = PrimeField(2)
        assert mat_rank(Matrix.from_rows(F, [[F.from_int(x) for x in r] for r in rows])) == 1
