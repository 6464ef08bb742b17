"""
Exhaustive shrunk-subspace oracle for tiny instances over finite fields
"""
import itertools
import logging
from typing import Iterator, Optional, Tuple

from src.algebra.matrix import Matrix
from src.core.errors import ArgumentError
from src.models.space import MatrixSpace
from src.services.spaces import shrink_value

logger = logging.getLogger(__name__)

MAX_SUBSPACES = 200_000


def enumerate_subspaces(field, n: int) -> Iterator[Matrix]:
    """Every subspace of F^n once, as the column span of its reduced row echelon basis"""
    q = field.order()
    if q is None:
        raise ArgumentError(f"cannot enumerate subspaces over the infinite field {field!r}")
    elements = field.elements(q)
    yield Matrix.zeros(field, n, 0)
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(i, j) for i in range(k) for j in range(n)
                    if j > pivots[i] and j not in pivots]
            for values in itertools.product(elements, repeat=len(free)):
                rows = [[field.zero] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                yield Matrix.from_rows(field, rows, n).T


def count_subspaces(q: int, n: int) -> int:
    """Total number of subspaces of F_q^n (sum of Gaussian binomials)"""
    total = 0
    for k in range(n + 1):
        num, den = 1, 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def max_shrink(B: MatrixSpace, max_n: int = 3) -> Tuple[int, Matrix]:
    """Largest dim V - dim B(V) over all subspaces V, with a subspace attaining it"""
    F = B.field
    q = F.order()
    if q is None:
        raise ArgumentError("the oracle needs a finite field")
    if B.l > max_n:
        raise ArgumentError(f"oracle limited to n <= {max_n}, got {B.l}")
    total = count_subspaces(q, B.l)
    if total > MAX_SUBSPACES:
        raise ArgumentError(f"{total} subspaces of {F!r}^{B.l} exceed the oracle limit {MAX_SUBSPACES}")
    best: Optional[Tuple[int, Matrix]] = None
    for V in enumerate_subspaces(F, B.l):
        s = shrink_value(B, V)
        if best is None or s > best[0]:
            best = (s, V)
    logger.debug(f"oracle scanned {total} subspaces, max shrink {best[0]}")
    return best


def oracle_rank(B: MatrixSpace, max_n: int = 3) -> int:
    """n minus the maximal shrink, by exhaustive enumeration"""
    s, _ = max_shrink(B, max_n)
    return B.l - s
