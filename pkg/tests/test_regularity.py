"""
Tests for rank rounding and full windows
"""
import pytest

from src.algebra.fields import QQ
from src.algebra.matrix import Matrix
from src.core.config_manager import RunConfig, SamplingConfig
from src.core.errors import PreconditionError
from src.models.space import BlowupPoint
from src.services.regularity import find_full_window, round_rank
from src.services.spaces import assembled_rank, verify_window
from tests.conftest import make_space


def odd_rank_point():
    """(E11, E12, 0) on the 3 x 3 skew space: assembled rank 3 at d = 2"""
    return BlowupPoint(2, 2, (Matrix.unit(QQ, 2, 2, 0, 0), Matrix.unit(QQ, 2, 2, 0, 1), Matrix.zeros(QQ, 2, 2)))


class TestRoundRank:
    """Test rounding assembled ranks up to multiples of d"""

    def test_already_rounded(self, skew3):
        """Test a point at a multiple of d is returned unchanged"""
        P = BlowupPoint.scalars(QQ, [1, 0, 0])
        assert round_rank(skew3, 1, P) is P

    def test_division_algebra_rounding(self, skew3, run_config):
        """Test rank 3 at d = 2 is rounded to at least 4 by the default pipeline"""
        P = odd_rank_point()
        assert assembled_rank(skew3, P) == 3
        assert not run_config.sampling.local_search
        rounded = round_rank(skew3, 2, P, run_config)
        assert assembled_rank(skew3, rounded) >= 4
        assert (rounded.a, rounded.b) == (2, 2)
        allowed = set(QQ.elements(5))
        assert all(x in allowed for T in rounded.coeffs for x in T.entries)

    def test_default_skips_local_search(self, skew3, run_config, monkeypatch):
        """Test random directions are never tried unless enabled"""
        def refuse(*args, **kwargs):
            raise AssertionError("local search ran")

        monkeypatch.setattr("src.services.regularity._local_search", refuse)
        rounded = round_rank(skew3, 2, odd_rank_point(), run_config)
        assert assembled_rank(skew3, rounded) >= 4

    def test_local_search_rounding(self, skew3):
        """Test the opt-in local search also reaches the target"""
        cfg = RunConfig(sampling=SamplingConfig(local_search=True))
        rounded = round_rank(skew3, 2, odd_rank_point(), cfg)
        assert assembled_rank(skew3, rounded) >= 4

    def test_local_search_is_deterministic(self, skew3):
        """Test equal seeds give equal points"""
        cfg = RunConfig(sampling=SamplingConfig(local_search=True, seed=3))
        first = round_rank(skew3, 2, odd_rank_point(), cfg)
        second = round_rank(skew3, 2, odd_rank_point(), cfg)
        assert first == second

    def test_explicit_target_at_d1(self, skew3):
        """Test d = 1 cannot be pushed beyond the commutative rank"""
        cfg = RunConfig(sampling=SamplingConfig(local_search=False))
        with pytest.raises(PreconditionError):
            round_rank(skew3, 1, BlowupPoint.scalars(QQ, [1, 0, 0]), cfg, target=3)


class TestFullWindow:
    """Test window extraction"""

    def test_scalar_window(self, skew3, run_config):
        """Test the 2 x 2 window of E12 - E21"""
        P = BlowupPoint.scalars(QQ, [1, 0, 0])
        point, window = find_full_window(skew3, 1, P, run_config)
        assert window.size == 2
        assert window.to_one_based() == {"rows": [1, 2], "cols": [1, 2]}
        assert verify_window(skew3, point, window)

    def test_blowup_window(self, skew3, run_config):
        """Test the window at d = 2 has full rank r d"""
        point, window = find_full_window(skew3, 2, odd_rank_point(), run_config)
        assert verify_window(skew3, point, window)
        assert 2 <= window.size <= 3
        assert assembled_rank(skew3, point) >= 2 * window.size

    def test_rectangular_space_rejected(self):
        """Test windows need a square space"""
        B = make_space(QQ, [[[1, 0, 0], [0, 1, 0]]])
        with pytest.raises(PreconditionError):
            find_full_window(B, 1, BlowupPoint.scalars(QQ, [1]))
