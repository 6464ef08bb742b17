"""
Cyclic extensions, Artin-Schreier-Witt towers and division algebra bases
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from sympy import primefactors

from src.algebra.fields import ExtensionField, Field
from src.algebra.matrix import Matrix, mat_kernel


@dataclass
class CyclicExtension:
    """Degree-d commutative algebra over a base field with a generator sigma of its Galois group.

    ``sigma`` acts on coordinates: column j holds the coordinates of sigma(b_j).
    """
    algebra: ExtensionField
    sigma: Matrix
    basis_labels: Tuple[str, ...] = ()
    degree_ledger: Dict[str, Any] = field(default_factory=dict)
    _powers: Dict[int, Matrix] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        """Validate cyclic extension"""
        d = self.algebra.degree
        if self.sigma.shape != (d, d):
            raise ValueError(f"sigma must be {d}x{d}, got {self.sigma.shape}")
        if not self.basis_labels:
            self.basis_labels = self.algebra.basis_labels

    @property
    def degree(self) -> int:
        return self.algebra.degree

    @property
    def base(self) -> Field:
        return self.algebra.base

    @property
    def structure_constants(self):
        return self.algebra.structure_constants

    def sigma_power(self, k: int) -> Matrix:
        """Cached matrix of sigma^k"""
        k %= self.degree
        if k not in self._powers:
            if k == 0:
                self._powers[k] = Matrix.identity(self.base, self.degree)
            else:
                self._powers[k] = self.sigma @ self.sigma_power(k - 1)
        return self._powers[k]

    def apply_sigma(self, x: Tuple[Any, ...], k: int = 1) -> Tuple[Any, ...]:
        return tuple(self.sigma_power(k).apply(list(x)))

    def fixed_space_dimension(self) -> int:
        return mat_kernel(self.sigma - Matrix.identity(self.base, self.degree)).cols

    def sigma_order(self) -> int:
        """Multiplicative order of sigma (a divisor check on the degree)"""
        d = self.degree
        identity = Matrix.identity(self.base, d)
        if self.sigma.power(d) != identity:
            return 0
        order = d
        for q in primefactors(d):
            while order % q == 0 and self.sigma.power(order // q) == identity:
                order //= q
        return order

    def check_invariants(self) -> List[str]:
        """Every violated extension invariant, empty when all hold"""
        violations = list(self.algebra.check_axioms())
        A = self.algebra
        basis = [A.basis_element(k) for k in range(self.degree)]
        images = [self.apply_sigma(b) for b in basis]
        for i in range(self.degree):
            for j in range(self.degree):
                lhs = self.apply_sigma(A.mul(basis[i], basis[j]))
                rhs = A.mul(images[i], images[j])
                if not A.eq(lhs, rhs):
                    violations.append(f"sigma is not multiplicative on (b{i}, b{j})")
        if not A.eq(self.apply_sigma(A.one), A.one):
            violations.append("sigma does not fix the unit")
        order = self.sigma_order()
        if order != self.degree:
            violations.append(f"sigma has order {order}, expected {self.degree}")
        fixed = self.fixed_space_dimension()
        if fixed != 1:
            violations.append(f"fixed space of sigma has dimension {fixed}, expected 1")
        return violations


@dataclass
class AswLevel:
    """Data of one level of the tower: omega_j^p - omega_j = alpha_{j-1}"""
    alpha: Tuple[Any, ...]
    beta: Tuple[Any, ...]


@dataclass
class AswTower:
    """Degree p^s cyclic extension of F_p(Z) built level by level"""
    p: int
    s: int
    levels: List[AswLevel]
    extensions: List[CyclicExtension]
    delta: List[int] = field(default_factory=list)

    @property
    def top(self) -> CyclicExtension:
        return self.extensions[-1]

    @property
    def degree_bound(self) -> int:
        return (2 * self.p + 3) ** self.s


@dataclass
class DivisionAlgebraBasis:
    """d^2 matrices over K(Y) whose K(Y^d)-span is a cyclic division algebra.

    ``gamma[i * d + j]`` is rho(b_j) u^i with u = Y * C.
    """
    d: int
    gamma: List[Matrix]
    delta: int
    base: Field
    twist: Matrix
    regular: List[Matrix]
    extension: Optional[CyclicExtension] = None

    def __post_init__(self):
        """Validate division algebra basis"""
        if len(self.gamma) != self.d * self.d:
            raise ValueError(f"Expected {self.d * self.d} basis matrices, got {len(self.gamma)}")
        for g in self.gamma:
            if g.shape != (self.d, self.d):
                raise ValueError(f"Basis matrices must be {self.d}x{self.d}")

    @property
    def field(self) -> Field:
        return self.gamma[0].ring
