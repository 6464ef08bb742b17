"""
Shared fixtures: the standard small matrix spaces
"""
import pytest

from src.algebra.fields import QQ, PrimeField
from src.algebra.matrix import Matrix
from src.core.config_manager import RunConfig
from src.models.space import MatrixSpace


def make_space(field, matrices):
    """MatrixSpace from nested integer lists"""
    k = len(matrices[0])
    l = len(matrices[0][0])
    basis = tuple(Matrix.from_rows(field, [[field.from_int(x) for x in row] for row in M], l) for M in matrices)
    return MatrixSpace(field, k, l, basis)


def unit_matrix(n, i, j):
    return [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)]


def skew_basis(n):
    """E_ij - E_ji for i < j"""
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            M = [[0] * n for _ in range(n)]
            M[i][j] = 1
            M[j][i] = -1
            basis.append(M)
    return basis


def full_basis(n):
    return [unit_matrix(n, i, j) for i in range(n) for j in range(n)]


@pytest.fixture
def skew3():
    return make_space(QQ, skew_basis(3))


@pytest.fixture
def skew3_gf2():
    return make_space(PrimeField(2), [[[abs(x) for x in row] for row in M] for M in skew_basis(3)])


@pytest.fixture
def span_e11():
    return make_space(QQ, [unit_matrix(2, 0, 0)])


@pytest.fixture
def span_e11_e12():
    return make_space(QQ, [unit_matrix(2, 0, 0), unit_matrix(2, 0, 1)])


@pytest.fixture
def full2():
    return make_space(QQ, full_basis(2))


@pytest.fixture
def full2_gf2():
    return make_space(PrimeField(2), full_basis(2))


@pytest.fixture
def run_config():
    return RunConfig()
