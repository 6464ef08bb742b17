"""
Rounding blow-up ranks up to multiples of d and extracting nonsingular windows
"""
import logging
import random
from typing import Any, List, Optional, Sequence, Tuple

from src.algebra.matrix import Matrix, mat_rank, mat_solve, nonsingular_submatrix
from src.core.config_manager import RunConfig
from src.core.errors import DomainError, InternalError, PreconditionError, SizeError
from src.models.space import BlowupPoint, MatrixSpace, Window
from src.services.divalg import build_division_algebra, specialize
from src.services.spaces import assemble, assembled_rank, default_sample_set, reduce_coefficients, verify_window
from src.services.towers import build_cyclic_extension, char_divides, ensure_root_of_unity

logger = logging.getLogger(__name__)


def _candidates(field, count: int) -> List[Any]:
    q = field.order()
    return field.elements(count if q is None else min(count, q))


def _local_search(B: MatrixSpace, d: int, point: BlowupPoint, rank: int, target: int,
                  cfg: RunConfig) -> Tuple[BlowupPoint, int]:
    """Seeded random-direction moves that never lower the assembled rank"""
    F = B.field
    rng = random.Random(f"{cfg.sampling.seed}:{d}:{rank}:{target}")
    steps = [t for t in _candidates(F, 4) if not F.is_zero(t)][:3]
    for _ in range(cfg.sampling.local_directions):
        direction = [Matrix(F, d, d, [F.random_element(rng, 1) for _ in range(d * d)]) for _ in point.coeffs]
        for t in steps:
            candidate = point.with_coeffs([T + N.scale(t) for T, N in zip(point.coeffs, direction)])
            new_rank = assembled_rank(B, candidate)
            if new_rank > rank:
                logger.debug(f"local search raised rank {rank} -> {new_rank} at d = {d}")
                point, rank = candidate, new_rank
                break
        if rank >= target:
            break
    return point, rank


def round_rank(B: MatrixSpace, d: int, point: BlowupPoint, cfg: Optional[RunConfig] = None,
               target: Optional[int] = None, S: Optional[Sequence[Any]] = None) -> BlowupPoint:
    """Point of the same (d, d)-blow-up whose assembled rank is at least the next multiple of d"""
    cfg = cfg or RunConfig()
    F = B.field
    rank = assembled_rank(B, point)
    if target is None:
        target = -(-rank // d) * d
    if rank >= target:
        return point
    if cfg.sampling.local_search:
        point, rank = _local_search(B, d, point, rank, target, cfg)
        if rank >= target:
            return point
    if d == 1:
        raise PreconditionError(f"rank {rank} below target {target} at d = 1")

    _, _, d1 = char_divides(F, d)
    base, zeta = ensure_root_of_unity(F, d1)
    E = build_cyclic_extension(base, d, zeta, max_degree=cfg.budgets.max_extension_degree)
    D = build_division_algebra(E, check=False)

    lifted = point.lift(base)
    B_base = B if base == F else B.lift(base)
    dim = max(B.k, B.l) * d
    x_values = _candidates(base, 2 * max(D.delta, 1) * dim + 1)
    y_values = _candidates(base, 2 * (d - 1) * dim + 1)

    coefficients = None
    for x in x_values:
        try:
            G = specialize(D, base.one, x)
        except DomainError:
            continue
        gram = Matrix.from_columns(base, [list(g.entries) for g in G], d * d)
        if mat_rank(gram) < d * d:
            continue
        coefficients = [mat_solve(gram, list(T.entries)) for T in lifted.coeffs]
        logger.debug(f"decomposed coefficients over the division algebra basis at X = {x}")
        break
    if coefficients is None:
        raise SizeError(f"{base!r} is too small to specialize the division algebra basis",
                        required=len(x_values) + 1, actual=base.order())

    tries = 0
    for lam in y_values:
        for x in x_values:
            tries += 1
            if tries > cfg.sampling.sample_budget:
                raise InternalError(
                    f"rank rounding to {target} found no specialization within {cfg.sampling.sample_budget} candidates",
                    details={"d": d, "rank": rank, "target": target},
                )
            try:
                G = specialize(D, lam, x)
            except DomainError:
                continue
            coeffs = []
            for c in coefficients:
                acc = Matrix.zeros(base, d, d)
                for cg, g in zip(c, G):
                    if not base.is_zero(cg):
                        acc = acc + g.scale(cg)
                coeffs.append(acc)
            candidate = BlowupPoint(d, d, tuple(coeffs))
            new_rank = mat_rank(assemble(B_base, candidate))
            logger.debug(f"Y={base.to_str(lam)} X={base.to_str(x)}: rank {new_rank}")
            if new_rank >= target:
                if S is None:
                    S = default_sample_set(F, target + 1)
                rounded = reduce_coefficients(B, candidate, target, S)
                logger.info(f"rounded rank {rank} -> {assembled_rank(B, rounded)} at d = {d}")
                return rounded
    raise InternalError(f"rank rounding to {target} failed at d = {d}",
                        details={"d": d, "rank": rank, "target": target})


def _partial_blocks(indices: Sequence[int], d: int) -> List[int]:
    counts = {}
    for i in indices:
        counts[i // d] = counts.get(i // d, 0) + 1
    return sorted(b for b, c in counts.items() if c < d)


def _used_blocks(indices: Sequence[int], d: int) -> List[int]:
    return sorted({i // d for i in indices})


def find_full_window(B: MatrixSpace, d: int, point: BlowupPoint,
                     cfg: Optional[RunConfig] = None) -> Tuple[BlowupPoint, Window]:
    """Point and r x r window whose induced rd x rd sub-matrix is nonsingular"""
    cfg = cfg or RunConfig()
    if not B.is_square:
        raise PreconditionError("windows are defined for square matrix spaces")
    point = round_rank(B, d, point, cfg)
    row_map = list(range(B.k))
    col_map = list(range(B.l))

    # columns: drop partially used block columns until every used block is full
    while True:
        current = B.restrict(row_map, col_map)
        M = assemble(current, point)
        rows, cols = nonsingular_submatrix(M)
        partial = _partial_blocks(cols, d)
        if not partial:
            col_map = [col_map[b] for b in _used_blocks(cols, d)]
            break
        drop = partial[0]
        logger.debug(f"dropping partially used column block {col_map[drop]}")
        col_map = col_map[:drop] + col_map[drop + 1:]
        point = round_rank(B.restrict(row_map, col_map), d, point, cfg)

    # rows, on the column-restricted space
    while True:
        current = B.restrict(row_map, col_map)
        M = assemble(current, point)
        rows, cols = nonsingular_submatrix(M)
        partial = _partial_blocks(rows, d)
        if not partial:
            row_map = [row_map[b] for b in _used_blocks(rows, d)]
            break
        drop = partial[0]
        logger.debug(f"dropping partially used row block {row_map[drop]}")
        row_map = row_map[:drop] + row_map[drop + 1:]
        point = round_rank(B.restrict(row_map, col_map), d, point, cfg)

    if len(row_map) != len(col_map):
        raise InternalError(f"window is {len(row_map)}x{len(col_map)}, not square")
    window = Window(tuple(row_map), tuple(col_map))
    if not verify_window(B, point, window):
        raise InternalError("window sub-matrix is singular")
    logger.debug(f"full window of size {window.size} at d = {d}")
    return point, window
