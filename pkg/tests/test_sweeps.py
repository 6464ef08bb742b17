"""
Randomized sweeps over small matrix spaces
"""
import random

import pytest

from src.algebra.fields import QQ, PrimeField
from src.algebra.matrix import Matrix
from src.core.config_manager import RunConfig
from src.models.space import BlowupPoint, MatrixSpace
from src.services.driver import NCRankService
from src.services.logging_service import TraceLoggingService
from src.services.oracle import oracle_rank
from src.services.reduce import dm_reduce
from src.services.regularity import find_full_window, round_rank
from src.services.spaces import (
    assembled_rank,
    blowup_space,
    compress_shrunk,
    default_sample_set,
    lift_shrunk,
    reduce_coefficients,
    shrink_value,
    verify_certificate,
    verify_window,
)
from tests.conftest import make_space

pytestmark = pytest.mark.slow

GF1009 = PrimeField(1009)


def random_space(rng, field, n, m, low=-2, high=2, sparsity=0.5):
    """Random space of dimension m in n x n matrices, or None when the draw is dependent"""
    matrices = [[[rng.randint(low, high) if rng.random() < sparsity else 0 for _ in range(n)]
                 for _ in range(n)] for _ in range(m)]
    B = make_space(field, matrices)
    if B.is_zero() or not B.is_independent():
        return None
    return B


def random_spaces(seed, field, count, sizes=(2, 3), low=-2, high=2):
    rng = random.Random(seed)
    spaces = []
    while len(spaces) < count:
        n = rng.choice(sizes)
        B = random_space(rng, field, n, rng.randint(1, n + 1), low, high)
        if B is not None:
            spaces.append(B)
    return spaces


def random_point(rng, B, d, low=-1, high=1):
    F = B.field
    return BlowupPoint(d, d, tuple(
        Matrix.from_rows(F, [[F.from_int(rng.randint(low, high)) for _ in range(d)] for _ in range(d)], d)
        for _ in range(B.m)))


def change_basis(B, rng):
    """Same space spanned by a unitriangular recombination of the basis"""
    F = B.field
    basis = list(B.basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            basis[i] = basis[i] + basis[j].scale(F.from_int(rng.randint(-1, 1)))
    return MatrixSpace(F, B.k, B.l, tuple(basis))


@pytest.fixture
def service(tmp_path):
    return NCRankService(trace_service=TraceLoggingService(logs_dir=str(tmp_path), enabled=False))


class TestRandomSpaces:
    """Test certificates on random spaces for both strategies"""

    @pytest.mark.parametrize("strategy", ["greedy", "dm"])
    @pytest.mark.parametrize("field", [QQ, GF1009], ids=["QQ", "GF1009"])
    def test_certificates(self, service, field, strategy):
        """Test 200 random spaces give verified certificates within d <= r + 1"""
        cfg = RunConfig(strategy=strategy)
        for index, B in enumerate(random_spaces(17, field, 200)):
            certificate = service.ncrank(B, cfg)
            report = verify_certificate(B, certificate)
            assert report.passed, f"space {index}: {report.summary()}"
            assert certificate.d <= max(certificate.r + 1, 1)
            assert certificate.r <= B.n

    def test_bit_growth_within_envelope(self, service):
        """Test coefficient sizes stay under the soft envelope over the rationals"""
        for B in random_spaces(23, QQ, 60, low=-9, high=9):
            statistics = service.ncrank(B, RunConfig()).statistics
            assert statistics.bit_envelope_breaches == 0
            assert statistics.max_bits <= statistics.bit_envelope

    def test_basis_change_invariance(self, service):
        """Test recombining the basis never changes r"""
        rng = random.Random(29)
        for B in random_spaces(29, QQ, 60):
            expected = service.ncrank(B, RunConfig()).r
            assert service.ncrank(change_basis(B, rng), RunConfig()).r == expected

    def test_lift_compress_round_trip(self, service):
        """Test shrunk subspaces survive the blow-up and come back with the same shrink"""
        checked = 0
        for B in random_spaces(31, QQ, 80):
            U = service.ncrank(B, RunConfig()).subspace
            if U.s <= 0:
                continue
            for d in (2, 3):
                lifted = lift_shrunk(U, d, B)
                assert shrink_value(blowup_space(B, d), lifted.V) >= lifted.s
                back = compress_shrunk(lifted, B, d)
                assert back.s >= U.s
                assert shrink_value(B, back.V) == back.s
            checked += 1
        assert checked > 0


class TestSmallFieldSweeps:
    """Test the extension-field path against the exhaustive oracle"""

    def test_agrees_with_oracle_over_gf3(self, service):
        """Test random subspaces of M(3, GF(3)) against exhaustive search"""
        for B in random_spaces(37, PrimeField(3), 12, sizes=(3,), low=0, high=2):
            certificate = service.ncrank(B, RunConfig())
            assert certificate.r == oracle_rank(B)
            e = certificate.statistics.extension_degree
            assert verify_certificate(B, certificate, d_bound=(certificate.r + 1) * e).passed

    def test_gf2_reroute_shape(self, service):
        """Test 2 x 2 spaces over GF(2) run over GF(2^6) and embed back in blocks of six"""
        for B in random_spaces(41, PrimeField(2), 15, sizes=(2,), low=0, high=1):
            certificate = service.ncrank(B, RunConfig())
            e = certificate.statistics.extension_degree
            assert e == 6
            assert certificate.statistics.reroutes == 1
            assert certificate.d % e == 0
            assert certificate.d <= (certificate.r + 1) * e
            assert certificate.r == oracle_rank(B)


class TestPointSweeps:
    """Test rounding, windows, coefficient reduction and table reduction on random points"""

    def test_round_rank_and_window(self):
        """Test 500 random points round up to a multiple of d and give a full window"""
        rng = random.Random(43)
        spaces = random_spaces(43, QQ, 25)
        for trial in range(500):
            B = spaces[trial % len(spaces)]
            d = 2
            P = random_point(rng, B, d)
            rank = assembled_rank(B, P)
            if rank == 0:
                continue
            rounded = round_rank(B, d, P)
            assert assembled_rank(B, rounded) >= -(-rank // d) * d
            point, window = find_full_window(B, d, P)
            assert verify_window(B, point, window)
            assert window.size * d <= assembled_rank(B, point)

    def test_reduce_coefficients(self):
        """Test 200 random points keep their rank with entries from a sample set of size r + 1"""
        rng = random.Random(47)
        spaces = random_spaces(47, QQ, 20)
        for trial in range(200):
            B = spaces[trial % len(spaces)]
            P = random_point(rng, B, rng.choice([1, 2, 3]), low=-50, high=50)
            r = assembled_rank(B, P)
            S = default_sample_set(QQ, r + 1)
            reduced = reduce_coefficients(B, P, r, S)
            assert assembled_rank(B, reduced) >= r
            assert all(x in S for T in reduced.coeffs for x in T.entries)

    def test_table_reduction_rounds(self):
        """Test the table reduction over 50 seeds stays within N^3 n rounds"""
        rng = random.Random(53)
        for seed in range(50):
            n = 2 if seed % 2 else 3
            identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            other = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            B = make_space(QQ, [identity, other])
            if not B.is_independent():
                continue
            N = n
            P = random_point(rng, B, N, low=-3, high=3)
            if assembled_rank(B, P) != n * N:
                P = BlowupPoint(N, N, (Matrix.identity(QQ, N), Matrix.zeros(QQ, N, N)))
            point, table = dm_reduce(B, P, RunConfig())
            assert (point.a, point.b) == (N - 1, N - 1)
            assert assembled_rank(B, point) == n * (N - 1)
            assert table.rounds <= N ** 3 * n
            assert table.violations() == []

