"""
Matrix spaces, blow-up points, windows, shrunk subspaces and certificates
"""
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence

from src.algebra.fields import Field
from src.algebra.matrix import Matrix, mat_rank


@dataclass(frozen=True)
class MatrixSpace:
    """Linear span of k x l basis matrices over one field"""
    field: Field
    k: int
    l: int
    basis: tuple = ()

    def __post_init__(self):
        """Validate matrix space"""
        object.__setattr__(self, "basis", tuple(self.basis))
        if self.k < 0 or self.l < 0:
            raise ValueError("Matrix space dimensions must be non-negative")
        for i, B in enumerate(self.basis):
            if B.shape != (self.k, self.l):
                raise ValueError(f"Basis matrix {i} has shape {B.shape}, expected {(self.k, self.l)}")
            if B.ring != self.field:
                raise ValueError(f"Basis matrix {i} is over {B.ring!r}, expected {self.field!r}")

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        if self.k != self.l:
            raise ValueError(f"Matrix space of {self.k}x{self.l} matrices is not square")
        return self.k

    @property
    def is_square(self) -> bool:
        return self.k == self.l

    def dimension(self) -> int:
        """Dimension of the span of the basis"""
        if not self.basis:
            return 0
        rows = [list(B.entries) for B in self.basis]
        return mat_rank(Matrix.from_rows(self.field, rows, self.k * self.l))

    def is_independent(self) -> bool:
        return self.dimension() == self.m

    def is_zero(self) -> bool:
        return all(B.is_zero() for B in self.basis)

    def lift(self, target: Field) -> "MatrixSpace":
        return MatrixSpace(target, self.k, self.l, tuple(B.lift(target) for B in self.basis))

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixSpace":
        """Space of the selected rows and columns of every basis matrix"""
        return MatrixSpace(self.field, len(rows), len(cols),
                           tuple(B.submatrix(list(rows), list(cols)) for B in self.basis))

    def combination(self, coefficients: Sequence) -> Matrix:
        f = self.field
        acc = Matrix.zeros(f, self.k, self.l)
        for c, B in zip(coefficients, self.basis):
            if not f.is_zero(c):
                acc = acc + B.scale(c)
        return acc


@dataclass(frozen=True)
class BlowupPoint:
    """Coefficient matrices T_1..T_m of a point sum B_i (x) T_i in the (a, b)-blow-up"""
    a: int
    b: int
    coeffs: tuple = ()

    def __post_init__(self):
        """Validate blow-up point"""
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.a < 0 or self.b < 0:
            raise ValueError("Blow-up shape must be non-negative")
        rings = {T.ring for T in self.coeffs}
        if len(rings) > 1:
            raise ValueError("Coefficient matrices must share one scalar domain")
        for i, T in enumerate(self.coeffs):
            if T.shape != (self.a, self.b):
                raise ValueError(f"Coefficient {i} has shape {T.shape}, expected {(self.a, self.b)}")

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @property
    def ring(self):
        return self.coeffs[0].ring if self.coeffs else None

    @classmethod
    def zero(cls, field: Field, m: int, a: int, b: int) -> "BlowupPoint":
        return cls(a, b, tuple(Matrix.zeros(field, a, b) for _ in range(m)))

    @classmethod
    def scalars(cls, field: Field, values: Sequence) -> "BlowupPoint":
        """The d = 1 point with the given scalar coefficients"""
        return cls(1, 1, tuple(Matrix.from_rows(field, [[v]]) for v in values))

    def lift(self, target: Field) -> "BlowupPoint":
        return BlowupPoint(self.a, self.b, tuple(T.lift(target) for T in self.coeffs))

    def map(self, fn) -> "BlowupPoint":
        coeffs = tuple(fn(T) for T in self.coeffs)
        a, b = (coeffs[0].shape if coeffs else (self.a, self.b))
        return BlowupPoint(a, b, coeffs)

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "BlowupPoint":
        return BlowupPoint(len(rows), len(cols), tuple(T.submatrix(list(rows), list(cols)) for T in self.coeffs))

    def with_coeffs(self, coeffs: Sequence[Matrix]) -> "BlowupPoint":
        return BlowupPoint(self.a, self.b, tuple(coeffs))


@dataclass(frozen=True)
class Window:
    """Block-row and block-column index sequences (0-based) of an r x r window"""
    row_blocks: tuple
    col_blocks: tuple

    def __post_init__(self):
        """Validate window"""
        object.__setattr__(self, "row_blocks", tuple(self.row_blocks))
        object.__setattr__(self, "col_blocks", tuple(self.col_blocks))
        if len(self.row_blocks) != len(self.col_blocks):
            raise ValueError("Window row and column index sequences must have equal length")
        for seq in (self.row_blocks, self.col_blocks):
            if any(i < 0 for i in seq):
                raise ValueError("Window indices must be non-negative")
            if any(x >= y for x, y in zip(seq, seq[1:])):
                raise ValueError("Window indices must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.row_blocks)

    def expanded(self, d: int, axis: str = "rows") -> List[int]:
        """Scalar indices covered by the window along one axis of a d-blow-up"""
        blocks = self.row_blocks if axis == "rows" else self.col_blocks
        return [i * d + t for i in blocks for t in range(d)]

    def to_one_based(self) -> dict:
        return {"rows": [i + 1 for i in self.row_blocks], "cols": [j + 1 for j in self.col_blocks]}


@dataclass(frozen=True)
class ShrunkSubspace:
    """Columns of V span a subspace with dim B(V) <= dim V - s"""
    V: Matrix
    s: int

    @property
    def dim(self) -> int:
        return self.V.cols


@dataclass
class Certificate:
    """Rank witness in the (d, d)-blow-up paired with an (n - r)-shrunk subspace"""
    r: int
    d: int
    point: BlowupPoint
    subspace: ShrunkSubspace
    field: Optional[Field] = None
    statistics: Optional[object] = None
    notes: List[str] = dc_field(default_factory=list)

    def __post_init__(self):
        """Validate certificate"""
        if self.r < 0:
            raise ValueError("Rank cannot be negative")
        if self.d < 1:
            raise ValueError("Blow-up degree must be positive")
        if (self.point.a, self.point.b) != (self.d, self.d):
            raise ValueError(f"Witness shape {(self.point.a, self.point.b)} does not match d = {self.d}")
