"""
Dense exact matrices and the shared elimination core
"""
import logging
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

from src.algebra.fields import Field, PolyRing, Ring
from src.core.errors import DomainError, ShapeError

logger = logging.getLogger(__name__)


class Matrix:
    """Immutable rows x cols matrix over one scalar domain, entries row-major"""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence[Any]):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ShapeError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(ring, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence[Any]], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ShapeError(f"column {j} has {len(c)} entries, expected {rows}")
        return cls(ring, rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring: Ring, n: int, c: Any) -> "Matrix":
        z = ring.zero
        return cls(ring, n, n, [c if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, ring: Ring, rows: int, cols: int, i: int, j: int) -> "Matrix":
        """Matrix unit E_ij (0-based)"""
        entries = [ring.zero] * (rows * cols)
        entries[i * cols + j] = ring.one
        return cls(ring, rows, cols, entries)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: Tuple[int, int]) -> Any:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Any]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> List[Any]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> List[List[Any]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> List[List[Any]]:
        return [self.column(j) for j in range(self.cols)]

    # arithmetic ---------------------------------------------------------
    def _same(self, other: "Matrix") -> None:
        if self.ring != other.ring:
            raise DomainError(f"mixed scalar domains {self.ring!r} and {other.ring!r}")

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows,
                      [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, self.rows, self.cols, [add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        sub = self.ring.sub
        return Matrix(self.ring, self.rows, self.cols, [sub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols, [self.ring.neg(a) for a in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        r = self.ring
        out = []
        other_cols = other.columns()
        for i in range(self.rows):
            row = self.row(i)
            nz = [(k, a) for k, a in enumerate(row) if not r.is_zero(a)]
            for col in other_cols:
                acc = r.zero
                for k, a in nz:
                    b = col[k]
                    if not r.is_zero(b):
                        acc = r.add(acc, r.mul(a, b))
                out.append(acc)
        return Matrix(r, self.rows, other.cols, out)

    def apply(self, vector: Sequence[Any]) -> List[Any]:
        if len(vector) != self.cols:
            raise ShapeError(f"vector of length {len(vector)} for {self.cols} columns")
        r = self.ring
        out = []
        for i in range(self.rows):
            acc = r.zero
            for a, b in zip(self.row(i), vector):
                if not r.is_zero(a) and not r.is_zero(b):
                    acc = r.add(acc, r.mul(a, b))
            out.append(acc)
        return out

    def scale(self, c: Any) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols, [self.ring.mul(c, a) for a in self.entries])

    def power(self, e: int) -> "Matrix":
        result = Matrix.identity(self.ring, self.rows)
        base = self
        while e > 0:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def hstack(self, *others: "Matrix") -> "Matrix":
        parts = [self, *others]
        for p in others:
            self._same(p)
            if p.rows != self.rows:
                raise ShapeError(f"cannot hstack {self.rows} rows with {p.rows}")
        rows = [[x for p in parts for x in p.row(i)] for i in range(self.rows)]
        return Matrix.from_rows(self.ring, rows, sum(p.cols for p in parts))

    def vstack(self, *others: "Matrix") -> "Matrix":
        for p in others:
            self._same(p)
            if p.cols != self.cols:
                raise ShapeError(f"cannot vstack {self.cols} columns with {p.cols}")
        entries = list(self.entries)
        for p in others:
            entries.extend(p.entries)
        return Matrix(self.ring, self.rows + sum(p.rows for p in others), self.cols, entries)

    def map(self, fn: Callable[[Any], Any], ring: Optional[Ring] = None) -> "Matrix":
        return Matrix(ring or self.ring, self.rows, self.cols, [fn(a) for a in self.entries])

    def lift(self, ring: Ring) -> "Matrix":
        """Coerce every entry into ``ring`` along the base chain"""
        if ring == self.ring:
            return self
        return self.map(lambda a: ring.coerce(a, self.ring), ring)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(a) for a in self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and all(self.ring.eq(a, b) for a, b in zip(self.entries, other.entries)))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.ring.hash_element(a) for a in self.entries)))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(self.ring.to_str(a) for a in self.row(i)) for i in range(self.rows))
        return f"Matrix[{self.rows}x{self.cols}]({body})"


# ---------------------------------------------------------------------------
# elimination core
# ---------------------------------------------------------------------------

def _working_field(M: Matrix) -> Tuple[Field, Matrix]:
    ring = M.ring
    if isinstance(ring, Field):
        return ring, M
    if isinstance(ring, PolyRing):
        frac = ring.fraction_field()
        return frac, M.lift(frac)
    raise DomainError(f"no field of fractions known for {ring!r}")


def _eliminate(field: Field, rows: List[List[Any]], ncols: int, reduced: bool) -> Tuple[List[List[Any]], List[int]]:
    """Row echelon form in place; pivot choice is the first nonzero entry of the column"""
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    fraction_free = field.fraction_free and not reduced
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not field.is_zero(rows[i][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        pv = pivot_row[c]
        if reduced:
            inv = field.inv(pv)
            pivot_row = [field.mul(inv, x) for x in pivot_row]
            rows[r] = pivot_row
            targets = (i for i in range(nrows) if i != r)
        else:
            targets = range(r + 1, nrows)
        for i in targets:
            a = rows[i][c]
            if field.is_zero(a):
                continue
            if fraction_free:
                # cross-multiplication keeps integer rows, content removal bounds growth
                rows[i] = field.normalize_row(
                    [field.sub(field.mul(pv, x), field.mul(a, y)) for x, y in zip(rows[i], pivot_row)])
            elif reduced:
                rows[i] = [field.sub(x, field.mul(a, y)) for x, y in zip(rows[i], pivot_row)]
            else:
                f = field.div(a, pv)
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def echelon(M: Matrix, reduced: bool = False) -> Tuple[List[List[Any]], List[int]]:
    field, M = _working_field(M)
    rows = M.to_rows()
    if field.fraction_free and not reduced:
        rows = [field.normalize_row(r) for r in rows]
    return _eliminate(field, rows, M.cols, reduced)


def mat_rank(M: Matrix) -> int:
    """Rank over the field (of fractions) of the entry domain"""
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = echelon(M)
    return len(pivots)


def mat_kernel(M: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the right kernel"""
    field, M = _working_field(M)
    rows, pivots = _eliminate(field, M.to_rows(), M.cols, reduced=True)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * M.cols
        v[f] = field.one
        for r, c in enumerate(pivots):
            v[c] = field.neg(rows[r][f])
        basis.append(v)
    return Matrix.from_columns(field, basis, M.cols)


def mat_solve(M: Matrix, b: Sequence[Any]) -> Optional[List[Any]]:
    """One solution of M x = b, or None when b is outside the column span"""
    if len(b) != M.rows:
        raise ShapeError(f"right-hand side of length {len(b)} for {M.rows} rows")
    field, M = _working_field(M)
    rows = [M.row(i) + [b[i]] for i in range(M.rows)]
    rows, pivots = _eliminate(field, rows, M.cols + 1, reduced=True)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [field.zero] * M.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][M.cols]
    return x


def pivot_columns(M: Matrix) -> List[int]:
    if M.rows == 0 or M.cols == 0:
        return []
    return echelon(M)[1]


def column_basis(M: Matrix) -> Matrix:
    """The independent columns of M chosen greedily from the left"""
    return M.submatrix(list(range(M.rows)), pivot_columns(M))


def span_rank(vectors: Sequence[Sequence[Any]], field: Field, dim: int) -> int:
    return mat_rank(Matrix.from_columns(field, vectors, dim))


def span_contains(W: Matrix, v: Sequence[Any]) -> bool:
    if W.cols == 0:
        return all(W.ring.is_zero(x) for x in v)
    return mat_solve(W, v) is not None


def mat_preimage(A: Matrix, W: Matrix) -> Matrix:
    """Basis (as columns) of {v : A v in span(W)}"""
    if W.rows != A.rows:
        raise ShapeError(f"subspace of F^{W.rows} is not in the codomain F^{A.rows}")
    if W.cols == 0:
        return mat_kernel(A)
    K = mat_kernel(A.hstack(-W))
    top = K.submatrix(list(range(A.cols)), list(range(K.cols)))
    if top.cols == 0:
        return top
    return column_basis(top)


def nonsingular_submatrix(M: Matrix) -> Tuple[List[int], List[int]]:
    """Row and column indices (0-based) of an invertible rank(M) x rank(M) submatrix"""
    cols = pivot_columns(M)
    if not cols:
        return [], []
    restricted = M.submatrix(list(range(M.rows)), cols)
    rows = pivot_columns(restricted.transpose())
    return rows, cols


def mat_inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise ShapeError(f"cannot invert a {M.rows}x{M.cols} matrix")
    field, M = _working_field(M)
    n = M.rows
    aug = M.hstack(Matrix.identity(field, n))
    rows, pivots = _eliminate(field, aug.to_rows(), 2 * n, reduced=True)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DomainError("matrix is singular")
    return Matrix.from_rows(field, [r[n:] for r in rows[:n]], n)


def kron(B: Matrix, T: Matrix) -> Matrix:
    """Kronecker product; block (i, j) is B[i, j] * T"""
    if B.ring != T.ring:
        raise DomainError(f"mixed scalar domains {B.ring!r} and {T.ring!r}")
    r = B.ring
    rows, cols = B.rows * T.rows, B.cols * T.cols
    entries = [r.zero] * (rows * cols)
    for i in range(B.rows):
        for j in range(B.cols):
            b = B[i, j]
            if r.is_zero(b):
                continue
            for s in range(T.rows):
                base = (i * T.rows + s) * cols + j * T.cols
                for t in range(T.cols):
                    x = T[s, t]
                    if not r.is_zero(x):
                        entries[base + t] = r.mul(b, x)
    return Matrix(r, rows, cols, entries)


def block_diagonal(ring: Ring, blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    entries = [ring.zero] * (rows * cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                entries[(r0 + i) * cols + c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(ring, rows, cols, entries)


def max_bit_length(M: Matrix) -> int:
    return max((M.ring.bit_length(a) for a in M.entries), default=0)
