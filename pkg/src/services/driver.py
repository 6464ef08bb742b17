"""
Main nc-rank loop, small-field wrapper and run bookkeeping
"""
import logging
from typing import Any, Optional, Tuple

from src.algebra.fields import ExtensionField
from src.algebra.matrix import Matrix, column_basis, mat_rank
from src.core.config_manager import ConfigurationManager, RunConfig, config_manager
from src.core.errors import ArgumentError, HypothesisError, InternalError, PreconditionError, ShapeError, SizeError
from src.models.reports import RunStatistics, TraceEntry
from src.models.space import BlowupPoint, Certificate, MatrixSpace, ShrunkSubspace
from src.services.increment import increment_or_certify
from src.services.logging_service import TraceLoggingService, logging_service
from src.services.reduce import dm_reduce, greedy_reduce
from src.services.regularity import round_rank
from src.services.spaces import (
    assembled_rank,
    default_sample_set,
    point_bits,
    reduce_coefficients,
    shrink_value,
    space_bits,
    verify_certificate,
)
from src.services.towers import embed_point, finite_field_extension

logger = logging.getLogger(__name__)


class BitGrowthMonitor:
    """Soft bound on coefficient bit lengths over the rationals"""

    def __init__(self, input_bits: int, n: int, exponent: int, statistics: RunStatistics):
        self.envelope = (input_bits + 2) * (n + 1) ** exponent
        self.statistics = statistics
        statistics.input_bits = input_bits
        statistics.bit_envelope = self.envelope

    def observe(self, point: BlowupPoint, label: str) -> int:
        bits = point_bits(point)
        self.statistics.max_bits = max(self.statistics.max_bits, bits)
        if bits > self.envelope:
            self.statistics.bit_envelope_breaches += 1
            logger.warning(f"{label}: coefficient bit length {bits} exceeds envelope {self.envelope}")
        return bits


def _zero_certificate(B: MatrixSpace, statistics: RunStatistics) -> Certificate:
    F = B.field
    point = BlowupPoint.zero(F, B.m, 1, 1)
    subspace = ShrunkSubspace(V=Matrix.identity(F, B.n), s=B.n)
    return Certificate(r=0, d=1, point=point, subspace=subspace, field=F, statistics=statistics,
                       notes=["zero matrix space"])


def _frobenius_descent(U: Matrix, E: ExtensionField) -> Matrix:
    """Base-field basis of the sum of all Frobenius conjugates of an E-subspace"""
    q = E.base.order()
    conjugates = [U]
    current = U
    for _ in range(E.degree - 1):
        current = current.map(lambda x: E.pow(x, q))
        conjugates.append(current)
    stable = column_basis(conjugates[0].hstack(*conjugates[1:]))
    F = E.base
    coordinates = []
    for c in range(stable.cols):
        column = stable.column(c)
        for k in range(E.degree):
            coordinates.append([x[k] for x in column])
    if not coordinates:
        return Matrix.zeros(F, U.rows, 0)
    return column_basis(Matrix.from_columns(F, coordinates, U.rows))


class NCRankService:
    """Computes the non-commutative rank together with its two certificates"""

    def __init__(self, configuration: Optional[ConfigurationManager] = None,
                 trace_service: Optional[TraceLoggingService] = None):
        self.configuration = configuration or config_manager
        self.trace_service = trace_service or logging_service

    def _resolve(self, cfg: Optional[RunConfig]) -> RunConfig:
        cfg = cfg or self.configuration.build_run_config()
        if cfg.trace.enabled:
            self.trace_service.configure(cfg.trace.logs_dir, True)
        return cfg

    def required_field_size(self, n: int, cfg: RunConfig) -> int:
        """Field size needed by every step of a run on an n x n space"""
        return cfg.threshold(n, n + 1, n + 1)

    def _trace(self, statistics: RunStatistics, iteration: int, d: int, r: int, branch: str,
               replacements: int = 0, rank: Optional[int] = None, **extra: Any) -> None:
        self.trace_service.log_trace(TraceEntry(
            run_id=statistics.run_id, iteration=iteration, d=d, r=r, branch=branch,
            replacements=replacements, rank=rank, max_bits=statistics.max_bits, extra=extra,
        ))

    def _check_input(self, B: MatrixSpace, cfg: RunConfig) -> None:
        if not B.is_square:
            raise ShapeError(f"nc-rank needs square matrices, got {B.k}x{B.l}")
        if cfg.check_basis_on_load and not B.is_zero() and not B.is_independent():
            raise PreconditionError("basis matrices are linearly dependent")

    def ncrank(self, B: MatrixSpace, cfg: Optional[RunConfig] = None) -> Certificate:
        """Certified nc-rank of an n x n matrix space"""
        cfg = self._resolve(cfg)
        self._check_input(B, cfg)
        F = B.field
        q = F.order()
        if B.m and not B.is_zero() and q is not None and q < self.required_field_size(B.n, cfg):
            logger.warning(f"{F!r} is below the field-size threshold; rerouting through an extension")
            return self.ncrank_small_field(B, cfg)
        statistics = RunStatistics()
        certificate = self._run(B, cfg, statistics)
        self._finish(B, certificate, statistics, d_bound=None)
        return certificate

    def ncrank_small_field(self, B: MatrixSpace, cfg: Optional[RunConfig] = None) -> Certificate:
        """Certified nc-rank over a small finite field via an extension of large enough size"""
        cfg = self._resolve(cfg)
        self._check_input(B, cfg)
        F = B.field
        q = F.order()
        if q is None:
            raise ArgumentError(f"{F!r} is not a finite field")
        statistics = RunStatistics()
        if not B.m or B.is_zero():
            certificate = _zero_certificate(B, statistics)
            self._finish(B, certificate, statistics, d_bound=None)
            return certificate

        required = self.required_field_size(B.n, cfg)
        e = 1
        while q ** e < required:
            e += 1
        if e > cfg.budgets.max_extension_degree:
            raise SizeError(f"extension degree {e} exceeds the budget {cfg.budgets.max_extension_degree}",
                            required=e, actual=cfg.budgets.max_extension_degree)
        statistics.reroutes += 1
        statistics.extension_degree = e
        if e == 1:
            certificate = self._run(B, cfg, statistics)
            self._finish(B, certificate, statistics, d_bound=None)
            return certificate

        E = finite_field_extension(F, e)
        logger.info(f"running over {E!r} of size {q}^{e} >= {required}")
        inner = self._run(B.lift(E), cfg, statistics)
        r = inner.r
        point = embed_point(inner.point, E)
        V = _frobenius_descent(inner.subspace.V, E)
        s = shrink_value(B, V)
        if s < B.n - r:
            raise InternalError(f"descended subspace has shrink {s} < {B.n - r}", details={"r": r, "e": e})
        certificate = Certificate(
            r=r, d=point.a, point=point, subspace=ShrunkSubspace(V=V, s=s), field=F, statistics=statistics,
            notes=inner.notes + [f"witness embedded from {E!r} (degree {e})"],
        )
        self._finish(B, certificate, statistics, d_bound=(r + 1) * e)
        return certificate

    def _finish(self, B: MatrixSpace, certificate: Certificate, statistics: RunStatistics,
                d_bound: Optional[int]) -> None:
        report = verify_certificate(B, certificate, d_bound=d_bound)
        statistics.finish()
        if not report.passed:
            raise InternalError(f"certificate failed verification: {report.summary()}",
                                details=report.to_dict())
        self.trace_service.log_run(statistics, {"r": certificate.r, "d": certificate.d,
                                                "shrunk_dim": certificate.subspace.dim})
        logger.info(f"nc-rank {certificate.r} certified at d = {certificate.d} "
                    f"in {statistics.iterations} iterations ({statistics.elapsed_ms} ms)")

    def _initial_point(self, B: MatrixSpace) -> Tuple[BlowupPoint, int]:
        F = B.field
        ranks = [mat_rank(Bi) for Bi in B.basis]
        best = max(range(B.m), key=lambda i: (ranks[i], -i))
        return BlowupPoint.scalars(F, [F.one if i == best else F.zero for i in range(B.m)]), ranks[best]

    def _grow_commutative(self, B: MatrixSpace, point: BlowupPoint, r: int,
                          statistics: RunStatistics) -> Tuple[BlowupPoint, int]:
        """Raise the rank at d = 1 one coordinate at a time over a sample set of size n + 1"""
        F = B.field
        S = default_sample_set(F, B.n + 1)
        coeffs = [T[0, 0] for T in point.coeffs]
        improved = True
        while improved and r < B.n:
            improved = False
            for i in range(B.m):
                for s in S:
                    if F.eq(s, coeffs[i]):
                        continue
                    trial = coeffs[:i] + [s] + coeffs[i + 1:]
                    rank = assembled_rank(B, BlowupPoint.scalars(F, trial))
                    if rank > r:
                        coeffs, r, improved = trial, rank, True
                        statistics.commutative_steps += 1
                        break
                if r == B.n:
                    break
        if statistics.commutative_steps:
            logger.debug(f"rank {r} at d = 1 after {statistics.commutative_steps} coordinate changes")
        return BlowupPoint.scalars(F, coeffs), r

    def _reduce(self, Bw: MatrixSpace, point: BlowupPoint, cfg: RunConfig,
                statistics: RunStatistics) -> Tuple[BlowupPoint, int]:
        """Shrink the blow-up of a full-rank point on the windowed space"""
        n = Bw.n
        D = point.a
        replacements = 0
        while D > n + 1:
            point = greedy_reduce(Bw, point, cfg)
            D -= 1
            statistics.greedy_steps += 1
        if cfg.strategy == "dm":
            while D >= max(n, 2):
                try:
                    point, table = dm_reduce(Bw, point, cfg)
                except HypothesisError as e:
                    statistics.dm_fallbacks += 1
                    logger.info(f"table reduction not applicable ({e}); keeping d = {D}")
                    break
                D -= 1
                statistics.dm_rounds += table.rounds
                replacements += table.rounds
        return point, replacements

    def _run(self, B: MatrixSpace, cfg: RunConfig, statistics: RunStatistics) -> Certificate:
        F = B.field
        n = B.n
        if not B.m or B.is_zero():
            return _zero_certificate(B, statistics)
        monitor = BitGrowthMonitor(space_bits(B), n, cfg.budgets.bit_growth_exponent, statistics)

        point, r = self._initial_point(B)
        d = 1
        logger.info(f"starting at d = 1 with a basis element of rank {r}")
        point, r = self._grow_commutative(B, point, r, statistics)
        cap = cfg.budgets.max_iterations or n + 1
        for iteration in range(1, cap + 1):
            statistics.iterations = iteration
            result = increment_or_certify(B, point, r + 1, cfg)
            if result.branch == "shrunk":
                statistics.shrunk_branches += 1
                self._trace(statistics, iteration, d, r, "shrunk", rank=r * d,
                            shrunk_dim=result.subspace.dim)
                return Certificate(r=r, d=d, point=point, subspace=result.subspace, field=F,
                                   statistics=statistics)

            statistics.increment_branches += 1
            window = result.window
            D = result.d
            statistics.observe_d(D)
            Bw = B.restrict(list(window.row_blocks), list(window.col_blocks))
            point, replacements = self._reduce(Bw, result.point, cfg, statistics)
            D = point.a
            target = window.size * D
            S = default_sample_set(F, target + 1)
            point = reduce_coefficients(Bw, point, target, S)
            point = round_rank(B, D, point, cfg)
            rank = assembled_rank(B, point)
            if rank % D or rank // D <= r:
                raise InternalError(f"iteration {iteration} ended at rank {rank} for d = {D}",
                                    details={"r": r, "d": D})
            r, d = rank // D, D
            if d == 1:
                point, r = self._grow_commutative(B, point, r, statistics)
            monitor.observe(point, f"iteration {iteration}")
            self._trace(statistics, iteration, d, r, "increment", replacements=replacements, rank=rank,
                        window=window.to_one_based(), dm_fallbacks=statistics.dm_fallbacks)
        raise InternalError(f"no certificate after {cap} iterations", details={"r": r, "d": d})


# Global service instance
ncrank_service = NCRankService()


def ncrank(B: MatrixSpace, cfg: Optional[RunConfig] = None) -> Certificate:
    return ncrank_service.ncrank(B, cfg)


def ncrank_small_field(B: MatrixSpace, cfg: Optional[RunConfig] = None) -> Certificate:
    return ncrank_service.ncrank_small_field(B, cfg)
