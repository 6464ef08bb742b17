"""
Cyclic division algebras realized inside d x d matrices over K(Y)

Ranks over K(Y) = F(X)(Y) are decided by evaluating at points (x, y) of a
grid over F, or over a finite extension of F when F is too small. Every
nonsingular evaluation proves a lower bound. The grid is large enough that
the best evaluation equals the rank.
"""
import logging
import random
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.algebra.fields import Field, RatFuncField
from src.algebra.matrix import Matrix, mat_inverse, mat_rank, mat_solve, nonsingular_submatrix
from src.algebra.poly import Poly, RatFunc
from src.core.errors import DomainError, PreconditionError
from src.models.extensions import CyclicExtension, DivisionAlgebraBasis
from src.models.reports import VerificationReport
from src.services.towers import finite_field_extension

logger = logging.getLogger(__name__)


def _degree(x: Any) -> int:
    """Largest numerator/denominator degree, looking through nested rational functions"""
    if not isinstance(x, RatFunc):
        return 0
    inner = [_degree(c) for c in x.num.coeffs + x.den.coeffs]
    return max([x.num.degree, x.den.degree, 0] + inner)


def build_division_algebra(E: CyclicExtension, check: bool = True) -> DivisionAlgebraBasis:
    """Gamma = { rho(b_j) u^i } with u = Y * C over K(Y).

    C is the matrix of sigma on the basis of E. It satisfies
    C rho(b) = rho(sigma b) C and C^d = I. It is used as the twist.
    """
    if check:
        violations = E.check_invariants()
        if violations:
            raise PreconditionError(f"cyclic extension invariants violated: {violations[0]}",
                                    details={"violations": violations})
    d = E.degree
    K = E.base
    KY = RatFuncField(K, "Y")
    A = E.algebra
    regular = [Matrix.from_rows(K, A.regular_matrix(A.basis_element(j)), d) for j in range(d)]
    C = E.sigma
    u = C.lift(KY).scale(KY.variable())
    u_powers = [Matrix.identity(KY, d)]
    for _ in range(1, d):
        u_powers.append(u_powers[-1] @ u)
    gamma = [regular[j].lift(KY) @ u_powers[i] for i in range(d) for j in range(d)]
    delta = max((_degree(x) for g in gamma for x in g.entries), default=0)
    logger.debug(f"Division algebra basis of degree {d} over {K!r}, delta={delta}")
    return DivisionAlgebraBasis(d=d, gamma=gamma, delta=delta, base=K, twist=C,
                                regular=regular, extension=E)


def specialize(D: DivisionAlgebraBasis, y_value: Any, x_value: Any) -> List[Matrix]:
    """Gamma evaluated at Y = y_value and X = x_value, over the coefficient field of K"""
    F = D.base.base
    d = D.d
    C_x = D.twist.map(lambda a: a.evaluate(x_value), F)
    reg_x = [R.map(lambda a: a.evaluate(x_value), F) for R in D.regular]
    out = []
    power = Matrix.identity(F, d)
    for i in range(d):
        factor = F.pow(y_value, i)
        for j in range(d):
            out.append((reg_x[j] @ power).scale(factor))
        power = power @ C_x
    return out


# ---------------------------------------------------------------------------
# exact ranks over F(X)(Y) by evaluation
# ---------------------------------------------------------------------------

def _evaluation_field(F: Field, count: int) -> Field:
    """F, or the smallest extension of a finite F with at least ``count`` elements"""
    q = F.order()
    if q is None or q >= count:
        return F
    e = 1
    while q ** e < count:
        e += 1
    return finite_field_extension(F, e)


def _horner(p: Poly, value: Any, T: Field, coefficient: Callable[[Any], Any]) -> Any:
    acc = T.zero
    for c in reversed(p.coeffs):
        acc = T.add(T.mul(acc, value), coefficient(c))
    return acc


def _evaluate_ratfunc(f: RatFunc, value: Any, T: Field, coefficient: Callable[[Any], Any]) -> Any:
    den = _horner(f.den, value, T, coefficient)
    if T.is_zero(den):
        raise DomainError("evaluation at a pole")
    return T.div(_horner(f.num, value, T, coefficient), den)


def _evaluate_nested(e: RatFunc, x: Any, y: Any, T: Field, F: Field) -> Any:
    """Value in T of an element of F(X)(Y) at X = x, Y = y"""
    def scalar(a):
        return T.coerce(a, F)

    def inner(c):
        return _evaluate_ratfunc(c, x, T, scalar)

    return _evaluate_ratfunc(e, y, T, inner)


def _x_degree_bound(e: RatFunc) -> int:
    """X-degree of the numerator and denominator of e once the inner denominators are cleared"""
    coeffs = e.num.coeffs + e.den.coeffs
    top = max(max(c.num.degree, c.den.degree, 0) for c in coeffs)
    return top + sum(max(c.den.degree, 0) for c in coeffs)


def _grid(nx: int, ny: int):
    """Index pairs of an nx by ny grid, by increasing i + j"""
    for s in range(nx + ny - 1):
        for i in range(max(0, s - ny + 1), min(s, nx - 1) + 1):
            yield i, s - i


def best_evaluation(M: Matrix, F: Field) -> Tuple[int, Optional[Matrix]]:
    """Rank of M over F(X)(Y) and an evaluation of M reaching it.

    Grid sizes exceed twice the summed X- and Y-degrees of the entries, which
    bounds the degrees of a maximal nonzero minor times all denominators.
    """
    target = min(M.rows, M.cols)
    nonzero = [e for e in M.entries if not e.is_zero()]
    if not nonzero:
        return 0, None
    nx = 2 * sum(_x_degree_bound(e) for e in nonzero) + 1
    ny = 2 * sum(max(e.num.degree, e.den.degree, 0) for e in nonzero) + 1
    T = _evaluation_field(F, max(nx, ny))
    xs = T.elements(nx)
    ys = T.elements(ny)
    best, best_value = 0, None
    for i, j in _grid(nx, ny):
        try:
            value = M.map(lambda e: _evaluate_nested(e, xs[i], ys[j], T, F), T)
        except DomainError:
            continue
        rank = mat_rank(value)
        if rank > best:
            best, best_value = rank, value
            if best == target:
                break
    return best, best_value


def evaluation_rank(M: Matrix, F: Field) -> int:
    """Exact rank of a matrix over F(X)(Y)"""
    return best_evaluation(M, F)[0]


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------

def _is_in_y_power(x: RatFunc, d: int) -> bool:
    """Whether a rational function in Y is a rational function in Y^d"""
    for p in (x.num, x.den):
        for k, c in enumerate(p.coeffs):
            if k % d and not p.field.is_zero(c):
                return False
    return True


def _flatten(M: Matrix) -> List[Any]:
    return list(M.entries)


def _homogeneous_part(M: Matrix, K: Field) -> Optional[Tuple[Matrix, int]]:
    """(N, e) with M = N Y^e and N over K, or None when M is not Y-homogeneous"""
    exponent = None
    values = []
    for x in M.entries:
        if x.is_zero():
            values.append(K.zero)
            continue
        if not x.den.is_one():
            return None
        support = [k for k, c in enumerate(x.num.coeffs) if not K.is_zero(c)]
        if len(support) != 1 or (exponent is not None and support[0] != exponent):
            return None
        exponent = support[0]
        values.append(x.num.coeffs[exponent])
    return Matrix(K, M.rows, M.cols, values), exponent or 0


class _ClassSolver:
    """Coordinates over K in the span of one residue class of Gamma"""

    def __init__(self, members: List[int], parts: List[Tuple[Matrix, int]], KY: RatFuncField, F: Field):
        self.members = members
        self.columns = [_flatten(parts[a][0]) for a in members]
        K = KY.base
        self.K = K
        if not members:
            self.rows, self.inverse = [], None
            return
        W = Matrix.from_columns(K, self.columns, len(self.columns[0]))
        rank, value = best_evaluation(W.lift(KY), F)
        if rank < len(members):
            raise DomainError(f"residue class {members} is linearly dependent")
        self.rows = nonsingular_submatrix(value)[0]
        self.inverse = mat_inverse(W.submatrix(self.rows, list(range(W.cols))))

    def contains(self, N: Matrix) -> bool:
        K = self.K
        flat = _flatten(N)
        if not self.members:
            return all(K.is_zero(x) for x in flat)
        coords = self.inverse.apply([flat[r] for r in self.rows])
        for k, target in enumerate(flat):
            acc = K.zero
            for c, column in zip(coords, self.columns):
                acc = K.add(acc, K.mul(c, column[k]))
            if not K.eq(acc, target):
                return False
        return True


def _homogeneous_closure(D: DivisionAlgebraBasis, parts: List[Tuple[Matrix, int]],
                         pairs: List[Tuple[int, int]]) -> str:
    d = D.d
    F = D.base.base
    classes: Dict[int, _ClassSolver] = {}
    for c in range(d):
        members = [a for a, (_, e) in enumerate(parts) if e % d == c]
        classes[c] = _ClassSolver(members, parts, D.field, F)
    for a, b in pairs:
        N = parts[a][0] @ parts[b][0]
        if not classes[(parts[a][1] + parts[b][1]) % d].contains(N):
            return f"product of basis elements {a} and {b} leaves the K(Y^{d})-span"
    return ""


def _generic_closure(D: DivisionAlgebraBasis, vectors: Matrix, pairs: List[Tuple[int, int]]) -> str:
    for a, b in pairs:
        coords = mat_solve(vectors, _flatten(D.gamma[a] @ D.gamma[b]))
        if coords is None or not all(_is_in_y_power(c, D.d) for c in coords):
            return f"product of basis elements {a} and {b} leaves the K(Y^{D.d})-span"
    return ""


def verify_division_relations(D: DivisionAlgebraBasis, E: Optional[CyclicExtension] = None,
                              samples: int = 20, seed: int = 0,
                              max_pairs: Optional[int] = None) -> VerificationReport:
    """Span, closure over K(Y^d), twist relation, u^d = Y^d I and sampled invertibility"""
    E = E or D.extension
    report = VerificationReport(subject=f"division algebra of degree {D.d}")
    d = D.d
    KY = D.field
    K = D.base
    F = K.base
    Y = KY.variable()
    vectors = Matrix.from_columns(KY, [_flatten(g) for g in D.gamma], d * d)
    parts = [_homogeneous_part(g, K) for g in D.gamma]
    homogeneous = all(p is not None for p in parts)
    if homogeneous:
        # Y^e column factors do not change the rank
        flat = Matrix.from_columns(K, [_flatten(N) for N, _ in parts], d * d)
        rank = evaluation_rank(flat.lift(KY), F)
    else:
        rank = evaluation_rank(vectors, F)
    spans = rank == d * d
    report.add("span", spans, f"rank of Gamma is {rank}, expected {d * d}")
    if not spans:
        return report

    u = D.gamma[d] if d > 1 else Matrix.identity(KY, 1).scale(Y)
    pairs = [(a, b) for a in range(d * d) for b in range(d * d)]
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    if homogeneous:
        failure = _homogeneous_closure(D, parts, pairs)
    else:
        logger.debug("Gamma is not Y-homogeneous; checking closure over K(Y)")
        failure = _generic_closure(D, vectors, pairs)
    report.add("closure", not failure, failure)

    if E is not None:
        A = E.algebra
        twisted = True
        detail = ""
        for j in range(d):
            lhs = u @ D.regular[j].lift(KY)
            rhs = Matrix.from_rows(E.base, A.regular_matrix(E.apply_sigma(A.basis_element(j))), d).lift(KY) @ u
            if lhs != rhs:
                twisted = False
                detail = f"u rho(b{j}) != rho(sigma(b{j})) u"
                break
        report.add("twist", twisted, detail)

    y_d = KY.pow(Y, d)
    report.add("u^d = Y^d I", u.power(d) == Matrix.scalar(KY, d, y_d), "u^d is not central")

    invertible, failure = sample_division_property(D, samples, seed)
    report.add("division sampling", invertible, failure)
    return report


def sample_division_property(D: DivisionAlgebraBasis, samples: int = 20, seed: int = 0):
    """Check that probe and random nonzero elements of the K(Y^d)-span are invertible"""
    d = D.d
    KY = D.field
    K = D.base
    rng = random.Random(seed)
    y_d = KY.pow(KY.variable(), d)
    identity = D.gamma[0]
    candidates = [D.gamma[i * d] - identity for i in range(1, d)]
    for _ in range(samples):
        acc = Matrix.zeros(KY, d, d)
        for g in D.gamma:
            a = K.random_element(rng, 2)
            b = K.random_element(rng, 2)
            coefficient = KY.add(KY.embed(a), KY.mul(KY.embed(b), y_d))
            if not KY.is_zero(coefficient):
                acc = acc + g.scale(coefficient)
        if not acc.is_zero():
            candidates.append(acc)
    for index, element in enumerate(candidates):
        rank = evaluation_rank(element, K.base)
        if rank != d:
            return False, f"element {index} has rank {rank} < {d}"
    logger.debug(f"{len(candidates)} elements of the degree {d} algebra are invertible")
    return True, ""
