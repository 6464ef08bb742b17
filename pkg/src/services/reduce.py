"""
Blow-up parameter reduction: greedy shrinking and the concavity table repair
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.algebra.matrix import Matrix, mat_rank
from src.core.config_manager import RunConfig
from src.core.errors import ArgumentError, HypothesisError, InternalError, PreconditionError
from src.models.space import BlowupPoint, MatrixSpace
from src.services.regularity import round_rank
from src.services.spaces import assemble, assembled_rank, default_sample_set, reduce_coefficients

logger = logging.getLogger(__name__)


def greedy_reduce(B: MatrixSpace, point: BlowupPoint, cfg: Optional[RunConfig] = None) -> BlowupPoint:
    """Point of the (d-1, d-1)-blow-up with full rank (d-1)n, from a full-rank point with d > n + 1"""
    cfg = cfg or RunConfig()
    n = B.n
    d = point.a
    if not B.is_square or point.b != d:
        raise PreconditionError("greedy reduction needs a square space and a square blow-up")
    if d <= n + 1:
        raise PreconditionError(f"greedy reduction needs d > n + 1, got d = {d}, n = {n}")
    rank = assembled_rank(B, point)
    if rank != d * n:
        raise PreconditionError(f"point has rank {rank}, expected {d * n}")

    keep = list(range(d - 1))
    smaller = point.restrict(keep, keep)
    lower = assembled_rank(B, smaller)
    if lower <= (d - 1) * (n - 1):
        raise InternalError(f"sub-point rank {lower} does not exceed {(d - 1) * (n - 1)}")
    reduced = round_rank(B, d - 1, smaller, cfg, target=(d - 1) * n)
    final = assembled_rank(B, reduced)
    if final != (d - 1) * n:
        raise InternalError(f"greedy reduction produced rank {final}, expected {(d - 1) * n}")
    logger.debug(f"greedy reduction {d} -> {d - 1} at n = {n}")
    return reduced


def _transpose_space(B: MatrixSpace) -> MatrixSpace:
    return MatrixSpace(B.field, B.l, B.k, tuple(Bi.T for Bi in B.basis))


def _transpose_point(P: BlowupPoint) -> BlowupPoint:
    return BlowupPoint(P.b, P.a, tuple(T.T for T in P.coeffs))


def _pad_rows(B: MatrixSpace, P: Optional[BlowupPoint], k: int, ell: int, extra: int) -> BlowupPoint:
    """Point with ``extra`` zero coefficient rows appended; None stands for the empty point"""
    if P is None or k == 0 or ell == 0:
        return BlowupPoint.zero(B.field, B.m, k + extra, ell)
    zeros = Matrix.zeros(B.field, extra, ell)
    return BlowupPoint(k + extra, ell, tuple(T.vstack(zeros) for T in P.coeffs))


def _pad_cols(B: MatrixSpace, P: Optional[BlowupPoint], k: int, ell: int, extra: int) -> BlowupPoint:
    if P is None or k == 0 or ell == 0:
        return BlowupPoint.zero(B.field, B.m, k, ell + extra)
    zeros = Matrix.zeros(B.field, k, extra)
    return BlowupPoint(k, ell + extra, tuple(T.hstack(zeros) for T in P.coeffs))


@dataclass
class DMTable:
    """Points M(k, l) of the (k, l)-blow-ups for 0 <= k, l <= N with cached ranks

    Entries with k = 0 or l = 0 are empty and have rank 0.
    """
    space: MatrixSpace
    N: int
    points: Dict[Tuple[int, int], BlowupPoint] = field(default_factory=dict)
    ranks: Dict[Tuple[int, int], int] = field(default_factory=dict)
    rounds: int = 0
    replacements: List[Tuple[str, int, int]] = field(default_factory=list)

    def __post_init__(self):
        """Validate table"""
        if not self.space.is_square:
            raise ValueError("Tables are defined for square matrix spaces")
        if self.N < 1:
            raise ValueError("Table bound must be positive")

    @property
    def n(self) -> int:
        return self.space.n

    @classmethod
    def seeded(cls, B: MatrixSpace, N: int, seeds: Optional[Dict[Tuple[int, int], BlowupPoint]] = None) -> "DMTable":
        """Table with the given seed points and zero points elsewhere"""
        table = cls(space=B, N=N)
        seeds = seeds or {}
        for k in range(1, N + 1):
            for ell in range(1, N + 1):
                P = seeds.get((k, ell)) or BlowupPoint.zero(B.field, B.m, k, ell)
                if (P.a, P.b) != (k, ell):
                    raise ArgumentError(f"seed at ({k}, {ell}) has shape {(P.a, P.b)}")
                table.points[(k, ell)] = P
                table.ranks[(k, ell)] = assembled_rank(B, P)
        return table

    def r(self, k: int, ell: int) -> int:
        if k == 0 or ell == 0:
            return 0
        return self.ranks[(k, ell)]

    def point(self, k: int, ell: int) -> Optional[BlowupPoint]:
        if k == 0 or ell == 0:
            return None
        return self.points[(k, ell)]

    def rank_table(self) -> List[List[int]]:
        return [[self.r(k, ell) for ell in range(self.N + 1)] for k in range(self.N + 1)]

    def violations(self) -> List[Tuple[int, int, int]]:
        """All (property, k, l) violations in row-major scan order"""
        found = []
        N = self.N
        r = self.r
        for k in range(N + 1):
            for ell in range(N + 1):
                if ell < N and r(k, ell + 1) < r(k, ell):
                    found.append((1, k, ell))
                if k < N and r(k + 1, ell) < r(k, ell):
                    found.append((2, k, ell))
                if ell < N - 1 and 2 * r(k, ell + 1) < r(k, ell) + r(k, ell + 2):
                    found.append((3, k, ell))
                if k < N - 1 and 2 * r(k + 1, ell) < r(k, ell) + r(k + 2, ell):
                    found.append((4, k, ell))
                if k == ell and k > 0 and r(k, k) % k:
                    found.append((5, k, ell))
        return found

    def first_violation(self) -> Optional[Tuple[int, int, int]]:
        violations = self.violations()
        return violations[0] if violations else None

    def recompute_mismatches(self) -> List[Tuple[int, int]]:
        """Entries whose cached rank differs from the recomputed one"""
        return [key for key, P in self.points.items()
                if assembled_rank(self.space, P) != self.ranks[key]]


def _concavity_split(B: MatrixSpace, upper: Optional[BlowupPoint], lower: BlowupPoint, k: int, ell: int,
                     r_k: int, r_k2: int, S: Sequence[Any]) -> Tuple[str, BlowupPoint]:
    """Fix of the row concavity violation at (k, l)

    Returns ``("k+2", A)`` when the combined point beats M(k+2, l), else ``("k+1", A_i)``
    for the better of the two (k+1)-row sub-points.
    """
    padded = _pad_rows(B, upper, k, ell, 2)
    first_rows = list(range(k))
    chosen = None
    for t in S:
        A = lower.with_coeffs([L + U.scale(t) for L, U in zip(lower.coeffs, padded.coeffs)])
        if assembled_rank(B, A) < r_k2:
            continue
        if k and assembled_rank(B, A.restrict(first_rows, list(range(ell)))) < r_k:
            continue
        chosen = A
        break
    if chosen is None:
        raise InternalError(f"no t in S keeps both rank conditions at ({k}, {ell})")
    if assembled_rank(B, chosen) > r_k2:
        return "k+2", chosen
    cols = list(range(ell))
    A1 = chosen.restrict(list(range(k + 1)), cols)
    A2 = chosen.restrict(first_rows + [k + 1], cols)
    return "k+1", (A1 if assembled_rank(B, A1) >= assembled_rank(B, A2) else A2)


def dm_repair_table(table: DMTable, S: Optional[Sequence[Any]] = None,
                    cfg: Optional[RunConfig] = None) -> DMTable:
    """Replace table entries by higher-rank points until all five properties hold"""
    cfg = cfg or RunConfig()
    B = table.space
    n, N = table.n, table.N
    F = B.field
    if S is None:
        S = default_sample_set(F, 2 * n * N + 1)
    S = list(S)
    if len(S) < 2 * n * N + 1:
        raise ArgumentError(f"sample set of size {len(S)} is smaller than 2nN + 1 = {2 * n * N + 1}")
    Bt = _transpose_space(B)
    reduce_data = cfg.budgets.dm_reduce_data and F.order() is None
    cap = N ** 3 * n * cfg.budgets.dm_round_factor

    while True:
        violation = table.first_violation()
        if violation is None:
            break
        if table.rounds >= cap:
            raise InternalError(f"table repair exceeded {cap} rounds", details={"violation": violation})
        prop, k, ell = violation
        r = table.r

        if prop == 1:
            target, P = (k, ell + 1), _pad_cols(B, table.point(k, ell), k, ell, 1)
        elif prop == 2:
            target, P = (k + 1, ell), _pad_rows(B, table.point(k, ell), k, ell, 1)
        elif prop == 4:
            which, P = _concavity_split(B, table.point(k, ell), table.point(k + 2, ell), k, ell,
                                        r(k, ell), r(k + 2, ell), S)
            target = (k + 2, ell) if which == "k+2" else (k + 1, ell)
        elif prop == 3:
            upper = table.point(k, ell)
            which, Pt = _concavity_split(Bt, None if upper is None else _transpose_point(upper),
                                         _transpose_point(table.point(k, ell + 2)), ell, k,
                                         r(k, ell), r(k, ell + 2), S)
            P = _transpose_point(Pt)
            target = (k, ell + 2) if which == "k+2" else (k, ell + 1)
        else:
            target, P = (k, k), round_rank(B, k, table.point(k, k), cfg)

        new_rank = assembled_rank(B, P)
        old_rank = table.ranks[target]
        if new_rank <= old_rank:
            raise InternalError(f"repair of property ({prop}) at ({k}, {ell}) did not raise rank at {target}",
                                details={"old": old_rank, "new": new_rank})
        if reduce_data:
            P = reduce_coefficients(B, P, new_rank, S)
        table.points[target] = P
        table.ranks[target] = new_rank
        table.rounds += 1
        table.replacements.append((f"({prop})", target[0], target[1]))
        logger.debug(f"property ({prop}) at ({k}, {ell}): M{target} rank {old_rank} -> {new_rank}")

    logger.debug(f"table repaired in {table.rounds} rounds")
    return table


def dm_conclude(r: Sequence[Sequence[int]], n: int, d: int) -> bool:
    """Whether r(d, d) = nd, after checking every hypothesis of the concavity argument"""
    N = len(r) - 1
    violations = []
    if not (n <= d + 1 <= N):
        violations.append(f"need n <= d + 1 <= N, got n = {n}, d = {d}, N = {N}")
    for k in range(N + 1):
        for ell in range(N + 1):
            if not 0 <= r[k][ell] <= min(k, ell) * n:
                violations.append(f"r({k},{ell}) = {r[k][ell]} outside [0, {min(k, ell) * n}]")
            if ell < N and r[k][ell + 1] < r[k][ell]:
                violations.append(f"(1) fails at ({k},{ell})")
            if k < N and r[k + 1][ell] < r[k][ell]:
                violations.append(f"(2) fails at ({k},{ell})")
            if ell < N - 1 and 2 * r[k][ell + 1] < r[k][ell] + r[k][ell + 2]:
                violations.append(f"(3) fails at ({k},{ell})")
            if k < N - 1 and 2 * r[k + 1][ell] < r[k][ell] + r[k + 2][ell]:
                violations.append(f"(4) fails at ({k},{ell})")
            if k == ell and k > 0 and r[k][k] % k:
                violations.append(f"(5) fails at ({k},{k})")
    if N >= 1 and r[1][1] <= 1:
        violations.append(f"r(1,1) = {r[1][1]} is not greater than 1")
    if d + 1 <= N and r[d + 1][d + 1] != n * (d + 1):
        violations.append(f"r({d + 1},{d + 1}) = {r[d + 1][d + 1]} differs from {n * (d + 1)}")
    if violations:
        raise HypothesisError(violations)
    return r[d][d] == n * d


def best_basis_seed(B: MatrixSpace) -> Optional[BlowupPoint]:
    """1 x 1 point of the basis element with the largest rank, if that rank is at least 2"""
    best, best_rank = None, 1
    for i, Bi in enumerate(B.basis):
        rank = mat_rank(Bi)
        if rank > best_rank:
            best, best_rank = i, rank
    if best is None:
        return None
    F = B.field
    return BlowupPoint.scalars(F, [F.one if i == best else F.zero for i in range(B.m)])


def dm_reduce(B: MatrixSpace, point: BlowupPoint, cfg: Optional[RunConfig] = None,
              S: Optional[Sequence[Any]] = None) -> Tuple[BlowupPoint, DMTable]:
    """Full-rank point of the (d, d)-blow-up from a full-rank point of the (d+1, d+1)-blow-up"""
    cfg = cfg or RunConfig()
    n = B.n
    N = point.a
    d = N - 1
    if point.b != N or not B.is_square:
        raise PreconditionError("table reduction needs a square space and a square blow-up")
    if assembled_rank(B, point) != n * N:
        raise PreconditionError(f"point is not of full rank {n * N}")
    seed = best_basis_seed(B)
    if seed is None:
        raise HypothesisError(["no basis element has rank at least 2"])
    if d < 1 or n > d + 1:
        raise HypothesisError([f"need n <= d + 1 with d >= 1, got n = {n}, d = {d}"])

    seeds = {(N, N): point}
    if N > 1:
        seeds[(1, 1)] = seed
    table = dm_repair_table(DMTable.seeded(B, N, seeds), S, cfg)
    if not dm_conclude(table.rank_table(), n, d):
        raise InternalError(f"repaired table has r({d},{d}) = {table.r(d, d)}, expected {n * d}")
    result = table.point(d, d)
    if mat_rank(assemble(B, result)) != n * d:
        raise InternalError("reduced point lost full rank")
    logger.debug(f"table reduction {N} -> {d} at n = {n} in {table.rounds} rounds")
    return result, table
