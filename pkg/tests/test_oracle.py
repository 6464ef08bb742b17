"""
Tests for the exhaustive shrunk-subspace oracle
"""
import pytest

from src.algebra.fields import PrimeField
from src.algebra.matrix import mat_rank
from src.core.errors import ArgumentError
from src.services.oracle import count_subspaces, enumerate_subspaces, max_shrink, oracle_rank
from src.services.spaces import shrink_value
from tests.conftest import make_space, unit_matrix


class TestOracle:
    """Test subspace enumeration and maximal shrink"""

    @pytest.mark.parametrize("q,n,expected", [(2, 1, 2), (2, 2, 5), (2, 3, 16), (3, 2, 6)])
    def test_count_subspaces(self, q, n, expected):
        """Test Gaussian binomial sums"""
        assert count_subspaces(q, n) == expected

    def test_enumeration_is_complete(self):
        """Test each subspace of GF(2)^3 appears once with an independent basis"""
        F = PrimeField(2)
        subspaces = list(enumerate_subspaces(F, 3))
        assert len(subspaces) == count_subspaces(2, 3)
        assert all(mat_rank(V) == V.cols for V in subspaces)
        keys = {tuple(V.entries) + (V.cols,) for V in subspaces}
        assert len(keys) == len(subspaces)

    def test_max_shrink(self, full2_gf2):
        """Test full matrix spaces shrink nothing"""
        s, V = max_shrink(full2_gf2)
        assert s == 0
        assert oracle_rank(full2_gf2) == 2

    def test_shrunk_space(self):
        """Test span(E11, E12) over GF(3) has a 1-shrunk subspace"""
        B = make_space(PrimeField(3), [unit_matrix(2, 0, 0), unit_matrix(2, 0, 1)])
        s, V = max_shrink(B)
        assert s == 1
        assert shrink_value(B, V) == 1
        assert oracle_rank(B) == 1

    def test_infinite_field_refused(self, span_e11):
        """Test the rationals cannot be enumerated"""
        with pytest.raises(ArgumentError):
            oracle_rank(span_e11)

    def test_size_limit(self):
        """Test n above max_n is refused"""
        B = make_space(PrimeField(2), [unit_matrix(4, 0, 0)])
        with pytest.raises(ArgumentError):
            oracle_rank(B, max_n=3)
