"""
File models for matrix spaces, blow-up points, certificates and extensions
"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

# A matrix is a list of rows of canonical scalar values
MatrixRows = List[List[Any]]


class FieldSpecModel(BaseModel):
    """Description of a scalar field"""
    kind: Literal["rationals", "prime", "extension", "rational_functions"]
    p: Optional[int] = Field(default=None, description="Characteristic of a prime field")
    base: Optional["FieldSpecModel"] = Field(default=None, description="Base field of an extension")
    degree: Optional[int] = Field(default=None, description="Extension degree", ge=1)
    structure_constants: Optional[List[List[List[Any]]]] = Field(
        default=None, description="sc[i][j][k] is the coefficient of b_k in b_i * b_j"
    )
    label: str = Field(default="", description="Extension label")
    unit: Optional[List[Any]] = Field(default=None, description="Coordinates of the identity")
    zeta: Optional[List[Any]] = Field(default=None, description="Coordinates of a recorded root of unity")
    zeta_order: Optional[int] = Field(default=None, ge=1)
    var: str = Field(default="X", description="Variable of a rational function field")

    @model_validator(mode="after")
    def validate_kind(self):
        if self.kind == "prime" and self.p is None:
            raise ValueError("prime fields need p")
        if self.kind == "extension":
            if self.base is None or self.degree is None or self.structure_constants is None:
                raise ValueError("extensions need base, degree and structure_constants")
            d = self.degree
            sc = self.structure_constants
            if len(sc) != d or any(len(plane) != d or any(len(row) != d for row in plane) for plane in sc):
                raise ValueError(f"structure_constants must be a {d}x{d}x{d} array")
        if self.kind == "rational_functions" and self.base is None:
            raise ValueError("rational function fields need a base")
        if (self.zeta is None) != (self.zeta_order is None):
            raise ValueError("zeta and zeta_order must be given together")
        return self


class SpaceFile(BaseModel):
    """A matrix space: field, shape and basis matrices"""
    format: Literal["ncrank/space"] = "ncrank/space"
    field: FieldSpecModel
    k: int = Field(..., ge=0)
    l: Optional[int] = Field(default=None, ge=0)
    basis: List[MatrixRows] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_shapes(self):
        cols = self.k if self.l is None else self.l
        for i, B in enumerate(self.basis):
            if len(B) != self.k or any(len(row) != cols for row in B):
                raise ValueError(f"basis matrix {i} is not {self.k}x{cols}")
        return self


class PointFile(BaseModel):
    """A blow-up point: coefficient matrices T_1..T_m of shape a x b"""
    format: Literal["ncrank/point"] = "ncrank/point"
    field: Optional[FieldSpecModel] = None
    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    coeffs: List[MatrixRows] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_shapes(self):
        for i, T in enumerate(self.coeffs):
            if len(T) != self.a or any(len(row) != self.b for row in T):
                raise ValueError(f"coefficient {i} is not {self.a}x{self.b}")
        return self


class SubspaceModel(BaseModel):
    """Basis columns of a subspace of F^n and its claimed shrink"""
    n: int = Field(..., ge=0)
    s: int
    columns: List[List[Any]] = Field(default_factory=list)

    @field_validator("columns")
    @classmethod
    def validate_columns(cls, v):
        lengths = {len(c) for c in v}
        if len(lengths) > 1:
            raise ValueError("subspace columns must share one length")
        return v


class CertificateFile(BaseModel):
    """nc-rank certificate: a rank witness and a shrunk subspace"""
    format: Literal["ncrank/certificate"] = "ncrank/certificate"
    field: FieldSpecModel
    r: int = Field(..., ge=0)
    d: int = Field(..., ge=1)
    point: PointFile
    subspace: SubspaceModel
    statistics: Optional[Dict[str, Any]] = None
    notes: List[str] = Field(default_factory=list)


class ExtensionFile(BaseModel):
    """Inspection dump of a cyclic extension"""
    format: Literal["ncrank/extension"] = "ncrank/extension"
    characteristic: int
    degree: int
    base: FieldSpecModel
    basis_labels: List[str]
    structure_constants: List[List[List[Any]]]
    sigma: MatrixRows
    degree_ledger: Dict[str, Any] = Field(default_factory=dict)


FieldSpecModel.model_rebuild()
