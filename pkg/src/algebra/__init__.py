"""
Exact arithmetic: scalar domains, polynomials, rational functions and matrices
"""
from .fields import (
    QQ,
    ExtensionField,
    Field,
    PolyRing,
    PrimeField,
    RationalField,
    RatFuncField,
    Ring,
)
from .matrix import (
    Matrix,
    column_basis,
    kron,
    mat_inverse,
    mat_kernel,
    mat_preimage,
    mat_rank,
    mat_solve,
    nonsingular_submatrix,
)
from .poly import Poly, RatFunc, poly_gcd, poly_xgcd

__all__ = [
    # Scalar domains
    "Ring",
    "Field",
    "RationalField",
    "PrimeField",
    "ExtensionField",
    "PolyRing",
    "RatFuncField",
    "QQ",
    # Polynomials
    "Poly",
    "RatFunc",
    "poly_gcd",
    "poly_xgcd",
    # Matrices
    "Matrix",
    "mat_rank",
    "mat_kernel",
    "mat_solve",
    "mat_preimage",
    "mat_inverse",
    "column_basis",
    "nonsingular_submatrix",
    "kron",
]
