"""
Assembly, shrunk subspaces, coefficient reduction and certificate verification
"""
import logging
from typing import Any, List, Optional, Sequence

from src.algebra.fields import Field
from src.algebra.matrix import Matrix, column_basis, kron, mat_rank, max_bit_length
from src.core.errors import ArgumentError, InternalError, PreconditionError, ShapeError, SizeError
from src.models.reports import VerificationReport
from src.models.space import BlowupPoint, Certificate, MatrixSpace, ShrunkSubspace, Window

logger = logging.getLogger(__name__)


def _common_ring(B: MatrixSpace, P: BlowupPoint) -> Field:
    ring = P.ring
    if ring is None or ring == B.field:
        return B.field
    if not ring.has_subdomain(B.field):
        raise ShapeError(f"point over {ring!r} does not extend {B.field!r}")
    return ring


def assemble(B: MatrixSpace, P: BlowupPoint) -> Matrix:
    """sum_i B_i (x) T_i, of shape (k a) x (l b)"""
    if P.m != B.m:
        raise ShapeError(f"point has {P.m} coefficients for {B.m} basis matrices")
    ring = _common_ring(B, P)
    acc = Matrix.zeros(ring, B.k * P.a, B.l * P.b)
    for Bi, Ti in zip(B.basis, P.coeffs):
        if Ti.is_zero() or Bi.is_zero():
            continue
        acc = acc + kron(Bi.lift(ring), Ti)
    return acc


def assembled_rank(B: MatrixSpace, P: BlowupPoint) -> int:
    return mat_rank(assemble(B, P))


def blowup_space(B: MatrixSpace, a: int, b: Optional[int] = None) -> MatrixSpace:
    """The (a, b)-blow-up spanned by B_i (x) E_st"""
    b = a if b is None else b
    F = B.field
    basis = [kron(Bi, Matrix.unit(F, a, b, s, t)) for Bi in B.basis for s in range(a) for t in range(b)]
    return MatrixSpace(F, B.k * a, B.l * b, tuple(basis))


def image(B: MatrixSpace, V: Matrix) -> Matrix:
    """Columns B_i v spanning B(V)"""
    ring = V.ring
    if V.rows != B.l:
        raise ShapeError(f"subspace of F^{V.rows} for a space acting on F^{B.l}")
    if not B.basis or V.cols == 0:
        return Matrix.zeros(ring, B.k, 0)
    parts = [Bi.lift(ring) @ V for Bi in B.basis]
    return parts[0].hstack(*parts[1:])


def shrink_value(B: MatrixSpace, V: Matrix) -> int:
    """dim V - dim B(V)"""
    return mat_rank(V) - mat_rank(image(B, V))


def lift_shrunk(U: ShrunkSubspace, d: int, B: Optional[MatrixSpace] = None) -> ShrunkSubspace:
    """U (x) F^d, an (s d)-shrunk subspace of the (d, d)-blow-up"""
    if U.s <= 0:
        raise PreconditionError(f"a {U.s}-shrunk subspace is not a certificate")
    if B is not None and shrink_value(B, U.V) < U.s:
        raise PreconditionError("subspace does not verify as claimed")
    V = kron(U.V, Matrix.identity(U.V.ring, d))
    return ShrunkSubspace(V=V, s=U.s * d)


def compress_shrunk(V_blow: ShrunkSubspace, B: MatrixSpace, d: int) -> ShrunkSubspace:
    """Span of the block-coordinate projections of a blow-up subspace, re-verified"""
    V = V_blow.V
    if V.rows != B.l * d:
        raise ShapeError(f"blow-up subspace of F^{V.rows} for l*d = {B.l * d}")
    ring = V.ring
    projections = []
    for c in range(V.cols):
        v = V.column(c)
        for t in range(d):
            projections.append([v[j * d + t] for j in range(B.l)])
    if projections:
        U = column_basis(Matrix.from_columns(ring, projections, B.l))
    else:
        U = Matrix.zeros(ring, B.l, 0)
    s = shrink_value(B, U)
    required = -(-V_blow.s // d)
    if s < required:
        raise InternalError(f"compressed subspace has shrink {s} < {required}",
                            details={"shrink": s, "required": required})
    return ShrunkSubspace(V=U, s=s)


def default_sample_set(field: Field, count: int) -> List[Any]:
    """First ``count`` elements of the field's fixed enumeration"""
    q = field.order()
    if q is not None and q < count:
        raise SizeError(f"{field!r} has {q} elements, {count} are needed", required=count, actual=q)
    return field.elements(count)


def reduce_coefficients(B: MatrixSpace, point: BlowupPoint, r: int,
                        S: Optional[Sequence[Any]] = None) -> BlowupPoint:
    """Replace every coefficient entry by an element of S keeping assembled rank >= r"""
    F = B.field
    if S is None:
        S = default_sample_set(F, r + 1)
    S = list(S)
    if len(S) < r + 1:
        raise ArgumentError(f"sample set of size {len(S)} is smaller than r + 1 = {r + 1}")
    K = point.ring or F
    lifted_S = [K.coerce(s, F) for s in S]
    B_K = B if K == F else B.lift(K)

    current = [T.to_rows() for T in point.coeffs]
    chosen: List[List[List[Any]]] = [[[None] * point.b for _ in range(point.a)] for _ in point.coeffs]

    def rank_now() -> int:
        P = BlowupPoint(point.a, point.b, tuple(Matrix.from_rows(K, rows, point.b) for rows in current))
        return mat_rank(assemble(B_K, P))

    for i in range(point.m):
        for s in range(point.a):
            for t in range(point.b):
                value = current[i][s][t]
                match = next((idx for idx, c in enumerate(lifted_S) if K.eq(c, value)), None)
                if match is not None:
                    chosen[i][s][t] = S[match]
                    continue
                for idx, c in enumerate(lifted_S):
                    current[i][s][t] = c
                    if rank_now() >= r:
                        chosen[i][s][t] = S[idx]
                        break
                else:
                    raise InternalError(f"no element of S keeps rank {r} at coefficient ({i}, {s}, {t})")

    reduced = BlowupPoint(point.a, point.b,
                          tuple(Matrix.from_rows(F, rows, point.b) for rows in chosen))
    if assembled_rank(B, reduced) < r:
        raise InternalError("coefficient reduction lost rank")
    return reduced


def point_bits(point: BlowupPoint) -> int:
    return max((max_bit_length(T) for T in point.coeffs), default=0)


def space_bits(B: MatrixSpace) -> int:
    return max((max_bit_length(Bi) for Bi in B.basis), default=0)


def verify_window(B: MatrixSpace, point: BlowupPoint, window: Window) -> bool:
    """Whether the window sub-matrix of the assembled point is nonsingular"""
    d = point.a
    M = assemble(B, point)
    rows = window.expanded(d, "rows")
    cols = window.expanded(point.b, "cols")
    if any(i >= M.rows for i in rows) or any(j >= M.cols for j in cols):
        return False
    return mat_rank(M.submatrix(rows, cols)) == window.size * d


def verify_certificate(B: MatrixSpace, C: Certificate, d_bound: Optional[int] = None) -> VerificationReport:
    """Exact check of both halves of a certificate"""
    report = VerificationReport(subject=f"certificate r={C.r} d={C.d}")
    n = B.l
    if C.point.m != B.m:
        report.add("point shape", False, f"{C.point.m} coefficients for {B.m} basis matrices")
        return report
    if C.point.ring is not None and C.point.ring != B.field:
        report.add("point field", False, f"witness over {C.point.ring!r}, space over {B.field!r}")
        return report
    rank = assembled_rank(B, C.point)
    report.add("witness rank", rank == C.r * C.d, f"rank {rank}, expected {C.r * C.d}")

    V = C.subspace.V
    if V.rows != n:
        report.add("subspace shape", False, f"vectors of length {V.rows}, expected {n}")
        return report
    independent = mat_rank(V) == V.cols
    report.add("subspace basis", independent, "columns are dependent")
    shrink = shrink_value(B, V)
    report.add("shrink", shrink >= n - C.r, f"shrink {shrink}, expected at least {n - C.r}")

    bound = C.r + 1 if d_bound is None else d_bound
    report.add("degree bound", C.d <= max(bound, 1), f"d = {C.d} exceeds {max(bound, 1)}")
    if not report.passed:
        logger.debug(report.summary())
    return report
