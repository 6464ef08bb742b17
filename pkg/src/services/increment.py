"""
Rank increment or shrunk-subspace certification from a regular blow-up point
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.algebra.matrix import (
    Matrix,
    column_basis,
    kron,
    mat_kernel,
    mat_preimage,
    mat_rank,
    mat_solve,
    span_contains,
)
from src.core.config_manager import RunConfig
from src.core.errors import ArgumentError, InternalError, PreconditionError, SizeError
from src.models.space import BlowupPoint, MatrixSpace, ShrunkSubspace, Window
from src.services.regularity import find_full_window, round_rank
from src.services.spaces import assemble, blowup_space, compress_shrunk, shrink_value

logger = logging.getLogger(__name__)


@dataclass
class WongSequence:
    """Second Wong sequence of an assembled matrix against its blow-up space

    ``V[j]`` is the preimage of ``W[j]``; ``W[0]`` is zero. When the sequence
    leaves the image, ``escape`` holds ``(level, generator, column)`` such that
    the generator applied to column ``column`` of ``V[level - 1]`` is not in the image.
    """
    A_hat: Matrix
    image: Matrix
    generators: List[Matrix]
    labels: List[Tuple[int, int, int]]
    V: List[Matrix] = field(default_factory=list)
    W: List[Matrix] = field(default_factory=list)
    escape: Optional[Tuple[int, int, int]] = None

    @property
    def stable(self) -> bool:
        return self.escape is None

    @property
    def limit(self) -> Matrix:
        return self.V[-1]


@dataclass
class IncrementResult:
    """Outcome of one increment step: a shrunk subspace or a larger window"""
    branch: str
    subspace: Optional[ShrunkSubspace] = None
    point: Optional[BlowupPoint] = None
    window: Optional[Window] = None
    d: Optional[int] = None
    wong: Optional[WongSequence] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def rank(self) -> Optional[int]:
        return None if self.window is None else self.window.size


def _generators(B: MatrixSpace, d: int) -> Tuple[List[Matrix], List[Tuple[int, int, int]]]:
    F = B.field
    gens, labels = [], []
    for i, Bi in enumerate(B.basis):
        for s in range(d):
            for t in range(d):
                gens.append(kron(Bi, Matrix.unit(F, d, d, s, t)))
                labels.append((i, s, t))
    return gens, labels


def _apply_all(gens: List[Matrix], V: Matrix) -> Matrix:
    blocks = [G @ V for G in gens]
    if not blocks or V.cols == 0:
        return Matrix.zeros(V.ring, V.rows, 0)
    return blocks[0].hstack(*blocks[1:])


def wong_sequence(B: MatrixSpace, point: BlowupPoint, d: int) -> WongSequence:
    """Second Wong sequence of the assembled point inside the (d, d)-blow-up of B"""
    A_hat = assemble(B, point)
    F = B.field
    N = A_hat.rows
    gens, labels = _generators(B, d)
    img = column_basis(A_hat)
    seq = WongSequence(A_hat=A_hat, image=img, generators=gens, labels=labels)

    W = Matrix.zeros(F, N, 0)
    V = mat_kernel(A_hat)
    seq.W.append(W)
    seq.V.append(V)
    img_rank = img.cols
    for level in range(1, N + 2):
        applied = _apply_all(gens, V)
        W_next = column_basis(applied) if applied.cols else applied
        if W_next.cols and mat_rank(img.hstack(W_next)) > img_rank:
            seq.escape = _locate_escape(seq, V, level)
            seq.W.append(W_next)
            logger.debug(f"Wong sequence leaves the image at level {level}")
            return seq
        if W_next.cols == W.cols:
            logger.debug(f"Wong sequence stable at level {level - 1}, dim V* = {V.cols}")
            return seq
        W = W_next
        V = mat_preimage(A_hat, W)
        seq.W.append(W)
        seq.V.append(V)
    raise InternalError("Wong sequence did not stabilise")


def _locate_escape(seq: WongSequence, V: Matrix, level: int) -> Tuple[int, int, int]:
    for h, G in enumerate(seq.generators):
        for c in range(V.cols):
            if not span_contains(seq.image, G.apply(V.column(c))):
                return level, h, c
    raise InternalError("escaping generator not found")


def _backtrack(seq: WongSequence) -> Tuple[List[List[List[Any]]], Dict[Tuple[int, int], Dict[int, Dict[int, Any]]]]:
    """Needed vectors per level and the generator coefficients linking consecutive levels

    ``needed[j]`` lists vectors of ``V[j]``. ``links[(j, g)][h][c]`` is the coefficient of
    generator ``h`` applied to ``needed[j - 1][c]`` in the expansion of ``A_hat`` times
    ``needed[j][g]``.
    """
    level, h_star, c_star = seq.escape
    F = seq.A_hat.ring
    N = seq.A_hat.rows
    top = level - 1
    needed: List[List[List[Any]]] = [[] for _ in range(level)]
    needed[top] = [seq.V[top].column(c_star)]
    links: Dict[Tuple[int, int], Dict[int, Dict[int, Any]]] = {}

    for j in range(top, 0, -1):
        below = seq.V[j - 1]
        system = _apply_all(seq.generators, below)
        parts: List[Tuple[int, int, List[Any]]] = []
        for g, y in enumerate(needed[j]):
            beta = mat_solve(system, seq.A_hat.apply(y))
            if beta is None:
                raise InternalError(f"Wong level {j} vector has no expansion one level down")
            for h in range(len(seq.generators)):
                coeffs = beta[h * below.cols:(h + 1) * below.cols]
                if all(F.is_zero(c) for c in coeffs):
                    continue
                parts.append((g, h, below.apply(coeffs)))
        if not parts:
            raise InternalError(f"Wong level {j} vector expands to zero")
        basis = column_basis(Matrix.from_columns(F, [z for _, _, z in parts], N))
        needed[j - 1] = basis.columns()
        for g, h, z in parts:
            gamma = mat_solve(basis, z)
            slot = links.setdefault((j, g), {}).setdefault(h, {})
            for c, value in enumerate(gamma):
                if not F.is_zero(value):
                    slot[c] = F.add(slot.get(c, F.zero), value)
    return needed, links


def _slot_matrices(seq: WongSequence, needed, links, size: int) -> Dict[int, Matrix]:
    """Generator-indexed coefficient matrices of the rank-raising direction"""
    F = seq.A_hat.ring
    offsets = []
    total = 0
    for vectors in needed:
        offsets.append(total)
        total += len(vectors)
    escape_slot = total
    entries: Dict[int, Dict[Tuple[int, int], Any]] = {}
    for (j, g), per_gen in links.items():
        for h, per_col in per_gen.items():
            for c, value in per_col.items():
                entries.setdefault(h, {})[(offsets[j] + g, offsets[j - 1] + c)] = value
    level, h_star, _ = seq.escape
    entries.setdefault(h_star, {})[(escape_slot, offsets[level - 1])] = F.one

    X = {}
    for h, cells in entries.items():
        values = [F.zero] * (size * size)
        for (row, col), value in cells.items():
            values[row * size + col] = value
        X[h] = Matrix(F, size, size, values)
    return X


def increment_or_certify(B: MatrixSpace, point: BlowupPoint, d_prime: int,
                         cfg: Optional[RunConfig] = None) -> IncrementResult:
    """Either a shrunk subspace proving the current rank maximal, or a larger regular window

    ``point`` lives in the (d, d)-blow-up of B and has assembled rank exactly ``r * d``.
    """
    cfg = cfg or RunConfig()
    if not B.is_square:
        raise PreconditionError("increment steps need a square matrix space")
    F = B.field
    n = B.n
    d = point.a
    if point.b != d:
        raise PreconditionError(f"point is {point.a}x{point.b}, expected a square blow-up")
    A_hat = assemble(B, point)
    rank = mat_rank(A_hat)
    if rank % d:
        raise PreconditionError(f"assembled rank {rank} is not a multiple of d = {d}")
    r = rank // d
    if d_prime <= r:
        raise ArgumentError(f"d' = {d_prime} must exceed the current rank {r}")
    q = F.order()
    required = cfg.threshold(n, d, d_prime)
    if q is not None and q < required:
        raise SizeError(f"{F!r} is too small for an increment step at n = {n}, d = {d}, d' = {d_prime}",
                        required=required, actual=q)

    seq = wong_sequence(B, point, d)
    if seq.stable:
        V_star = seq.limit
        blown = blowup_space(B, d)
        s_blow = shrink_value(blown, V_star)
        if s_blow < (n - r) * d:
            raise InternalError(f"Wong limit has shrink {s_blow} < {(n - r) * d}",
                                details={"d": d, "r": r})
        U = compress_shrunk(ShrunkSubspace(V=V_star, s=s_blow), B, d)
        logger.info(f"rank {r} certified by a shrunk subspace of dimension {U.dim}")
        return IncrementResult(branch="shrunk", subspace=U, d=d, wong=seq,
                               details={"r": r, "levels": len(seq.W) - 1})

    needed, links = _backtrack(seq)
    slots = sum(len(v) for v in needed) + 1
    d_inner = max(d_prime, slots)
    D = d * d_inner
    X = _slot_matrices(seq, needed, links, d_inner)
    logger.debug(f"escape at level {seq.escape[0]}, {slots} slots, blow-up {d} -> {D}")

    identity = Matrix.identity(F, d_inner)
    base_coeffs = [kron(T, identity) for T in point.coeffs]
    directions = []
    for i in range(B.m):
        acc = Matrix.zeros(F, D, D)
        for s in range(d):
            for t in range(d):
                h = (i * d + s) * d + t
                if h in X:
                    acc = acc + kron(Matrix.unit(F, d, d, s, t), X[h])
        directions.append(acc)

    q_count = n * D + 1
    values = F.elements(q_count if q is None else min(q_count, q))
    chosen = None
    for t in values:
        if F.is_zero(t):
            continue
        candidate = BlowupPoint(D, D, tuple(T + N.scale(t) for T, N in zip(base_coeffs, directions)))
        new_rank = mat_rank(assemble(B, candidate))
        if new_rank > r * D:
            chosen = candidate
            logger.debug(f"t = {F.to_str(t)} raises rank {r * D} -> {new_rank} at d = {D}")
            break
    if chosen is None:
        raise InternalError(f"no parameter value raises the rank above {r * D}", details={"d": D, "r": r})

    chosen = round_rank(B, D, chosen, cfg)
    chosen, window = find_full_window(B, D, chosen, cfg)
    if window.size <= r:
        raise InternalError(f"window of size {window.size} does not exceed rank {r}")
    logger.info(f"rank increased {r} -> {window.size} at d = {D}")
    return IncrementResult(branch="increment", point=chosen, window=window, d=D, wong=seq,
                           details={"r": r, "escape_level": seq.escape[0], "slots": slots})
