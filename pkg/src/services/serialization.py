"""
JSON file formats for spaces, blow-up points, certificates and extensions
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from src.algebra.fields import QQ, ExtensionField, Field, PrimeField, RatFuncField, RationalField
from src.algebra.matrix import Matrix
from src.core.errors import ArgumentError, InputFormatError, NCRankError
from src.models.extensions import CyclicExtension
from src.models.files import (
    CertificateFile,
    ExtensionFile,
    FieldSpecModel,
    PointFile,
    SpaceFile,
    SubspaceModel,
)
from src.models.space import BlowupPoint, Certificate, MatrixSpace, ShrunkSubspace

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

def field_to_spec(F: Field) -> FieldSpecModel:
    if isinstance(F, RationalField):
        return FieldSpecModel(kind="rationals")
    if isinstance(F, PrimeField):
        return FieldSpecModel(kind="prime", p=F.p)
    if isinstance(F, RatFuncField):
        return FieldSpecModel(kind="rational_functions", base=field_to_spec(F.base), var=F.var)
    if isinstance(F, ExtensionField):
        b = F.base
        return FieldSpecModel(
            kind="extension",
            base=field_to_spec(b),
            degree=F.degree,
            structure_constants=[[[b.format(c) for c in row] for row in plane] for plane in F.structure_constants],
            label=F.label,
            unit=F.format(F.unit),
            zeta=None if F.zeta is None else F.format(F.zeta),
            zeta_order=F.zeta_order,
        )
    raise ArgumentError(f"no file representation for {F!r}")


def field_from_spec(spec: FieldSpecModel) -> Field:
    if spec.kind == "rationals":
        return QQ
    if spec.kind == "prime":
        return PrimeField(spec.p)
    base = field_from_spec(spec.base)
    if spec.kind == "rational_functions":
        return RatFuncField(base, spec.var)
    sc = [[[base.parse(c) for c in row] for row in plane] for plane in spec.structure_constants]
    E = ExtensionField(base, spec.degree, sc, label=spec.label,
                       unit=None if spec.unit is None else [base.parse(c) for c in spec.unit])
    if spec.zeta is not None:
        E = E.with_root_of_unity(E.parse(spec.zeta), spec.zeta_order)
    return E


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def _decode(text: str, model: Type[ModelT], path: Optional[str]) -> ModelT:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"invalid JSON: {e.msg}", path=path, line=e.lineno) from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise InputFormatError(first["msg"], path=path, field=where or None) from e


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputFormatError(f"cannot read file: {e.strerror}", path=str(path)) from e


def _parse_matrix(F: Field, rows: List[List[Any]], n_rows: int, n_cols: int,
                  where: str, path: Optional[str]) -> Matrix:
    values = []
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            try:
                values.append(F.parse(value))
            except (ArgumentError, TypeError, ValueError) as e:
                raise InputFormatError(str(e), path=path, field=f"{where}.{i}.{j}") from e
    return Matrix(F, n_rows, n_cols, values)


def _format_matrix(M: Matrix) -> List[List[Any]]:
    return [[M.ring.format(x) for x in row] for row in M.to_rows()]


def _field(spec: FieldSpecModel, path: Optional[str]) -> Field:
    try:
        return field_from_spec(spec)
    except NCRankError as e:
        raise InputFormatError(str(e), path=path, field="field") from e


# ---------------------------------------------------------------------------
# matrix spaces
# ---------------------------------------------------------------------------

def space_to_dict(B: MatrixSpace) -> Dict[str, Any]:
    model = SpaceFile(field=field_to_spec(B.field), k=B.k, l=B.l,
                      basis=[_format_matrix(Bi) for Bi in B.basis])
    return model.model_dump(exclude_none=True)


def parse_space(text: str, path: Optional[str] = None) -> MatrixSpace:
    model = _decode(text, SpaceFile, path)
    F = _field(model.field, path)
    l = model.k if model.l is None else model.l
    basis = tuple(_parse_matrix(F, rows, model.k, l, f"basis.{i}", path) for i, rows in enumerate(model.basis))
    return MatrixSpace(F, model.k, l, basis)


def load_space(path: str) -> MatrixSpace:
    B = parse_space(_read(path), str(path))
    logger.debug(f"loaded {B.k}x{B.l} space of dimension {B.m} over {B.field!r} from {path}")
    return B


def dump_space(B: MatrixSpace, path: str) -> str:
    Path(path).write_text(json.dumps(space_to_dict(B), indent=2) + "\n")
    return str(path)


# ---------------------------------------------------------------------------
# blow-up points
# ---------------------------------------------------------------------------

def point_to_dict(P: BlowupPoint, with_field: bool = True) -> Dict[str, Any]:
    model = PointFile(
        field=field_to_spec(P.ring) if with_field and P.ring is not None else None,
        a=P.a, b=P.b, coeffs=[_format_matrix(T) for T in P.coeffs],
    )
    return model.model_dump(exclude_none=True)


def _point_from_model(model: PointFile, F: Field, path: Optional[str], prefix: str = "") -> BlowupPoint:
    coeffs = tuple(_parse_matrix(F, rows, model.a, model.b, f"{prefix}coeffs.{i}", path)
                   for i, rows in enumerate(model.coeffs))
    return BlowupPoint(model.a, model.b, coeffs)


def parse_point(text: str, field: Optional[Field] = None, path: Optional[str] = None) -> BlowupPoint:
    model = _decode(text, PointFile, path)
    if model.field is not None:
        field = _field(model.field, path)
    if field is None:
        raise InputFormatError("point file names no field and none was given", path=path, field="field")
    return _point_from_model(model, field, path)


def load_point(path: str, field: Optional[Field] = None) -> BlowupPoint:
    return parse_point(_read(path), field, str(path))


def dump_point(P: BlowupPoint, path: str) -> str:
    Path(path).write_text(json.dumps(point_to_dict(P), indent=2) + "\n")
    return str(path)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def certificate_to_dict(C: Certificate, field: Optional[Field] = None) -> Dict[str, Any]:
    F = field or C.field or C.point.ring
    V = C.subspace.V
    statistics = C.statistics.to_dict() if hasattr(C.statistics, "to_dict") else C.statistics
    model = CertificateFile(
        field=field_to_spec(F),
        r=C.r,
        d=C.d,
        point=PointFile(a=C.point.a, b=C.point.b, coeffs=[_format_matrix(T) for T in C.point.coeffs]),
        subspace=SubspaceModel(n=V.rows, s=C.subspace.s, columns=[[F.format(x) for x in col] for col in V.columns()]),
        statistics=statistics,
        notes=list(C.notes),
    )
    return model.model_dump(exclude_none=True)


def parse_certificate(text: str, path: Optional[str] = None) -> Certificate:
    model = _decode(text, CertificateFile, path)
    F = _field(model.field, path)
    point = _point_from_model(model.point, F, path, prefix="point.")
    sub = model.subspace
    values = []
    for c, column in enumerate(sub.columns):
        if len(column) != sub.n:
            raise InputFormatError(f"column of length {len(column)}, expected {sub.n}",
                                   path=path, field=f"subspace.columns.{c}")
        try:
            values.append([F.parse(x) for x in column])
        except (ArgumentError, TypeError, ValueError) as e:
            raise InputFormatError(str(e), path=path, field=f"subspace.columns.{c}") from e
    V = Matrix.from_columns(F, values, sub.n) if values else Matrix.zeros(F, sub.n, 0)
    try:
        return Certificate(r=model.r, d=model.d, point=point, subspace=ShrunkSubspace(V=V, s=sub.s),
                           field=F, statistics=model.statistics, notes=list(model.notes))
    except ValueError as e:
        raise InputFormatError(str(e), path=path, field="point") from e


def load_certificate(path: str) -> Certificate:
    return parse_certificate(_read(path), str(path))


def dump_certificate(C: Certificate, path: str) -> str:
    Path(path).write_text(json.dumps(certificate_to_dict(C), indent=2, default=str) + "\n")
    logger.info(f"certificate written to {path}")
    return str(path)


# ---------------------------------------------------------------------------
# cyclic extensions (inspection only)
# ---------------------------------------------------------------------------

def extension_to_dict(ext: CyclicExtension) -> Dict[str, Any]:
    K = ext.base
    model = ExtensionFile(
        characteristic=K.characteristic,
        degree=ext.degree,
        base=field_to_spec(K),
        basis_labels=list(ext.basis_labels),
        structure_constants=[[[K.format(c) for c in row] for row in plane] for plane in ext.structure_constants],
        sigma=_format_matrix(ext.sigma),
        degree_ledger=dict(ext.degree_ledger),
    )
    return model.model_dump()


def dump_extension(ext: CyclicExtension, path: str) -> str:
    Path(path).write_text(json.dumps(extension_to_dict(ext), indent=2) + "\n")
    return str(path)
