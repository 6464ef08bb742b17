"""
Exact scalar domains behind every matrix computation.

Each domain is an operations record: elements are plain Python values
(``Fraction`` for the rationals, ``int`` residues for prime fields,
coordinate tuples for extensions given by structure constants,
``Poly``/``RatFunc`` for polynomial rings and rational function fields)
and the domain object knows how to add, multiply, invert, compare,
enumerate and serialize them. One elimination core in
``src.algebra.matrix`` runs over all of them.
"""
import random
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime

from src.algebra.poly import Poly, RatFunc
from src.core.errors import ArgumentError, DomainError


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Ring:
    """Commutative ring operations record"""

    is_field = False
    base: Optional["Ring"] = None

    def __init__(self):
        self._key: Optional[tuple] = None

    # identity -----------------------------------------------------------
    def key(self) -> tuple:
        if self._key is None:
            self._key = self._make_key()
        return self._key

    def _make_key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    # arithmetic ---------------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def hash_element(self, a) -> int:
        return hash(a)

    def from_int(self, n: int):
        raise NotImplementedError

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def contains(self, a) -> bool:
        return True

    # presentation -------------------------------------------------------
    def to_str(self, a) -> str:
        return str(a)

    def format(self, a) -> Any:
        return self.to_str(a)

    def parse(self, value: Any):
        raise NotImplementedError

    def bit_length(self, a) -> int:
        return 0

    def normalize_row(self, row: List[Any]) -> List[Any]:
        return row

    fraction_free = False

    def coerce(self, a, source: "Ring"):
        """Map an element of ``source`` into this domain along the base chain"""
        if source is self or source == self:
            return a
        if self.base is not None:
            return self.embed(self.base.coerce(a, source))
        raise DomainError(f"cannot coerce from {source} into {self}")

    def embed(self, a):
        raise DomainError(f"{self} has no base domain")

    def has_subdomain(self, other: "Ring") -> bool:
        r: Optional[Ring] = self
        while r is not None:
            if r == other:
                return True
            r = r.base
        return False


class Field(Ring):
    """Field operations record"""

    is_field = True

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def order(self) -> Optional[int]:
        """Number of elements, None when infinite"""
        return None

    def elements(self, count: int) -> List[Any]:
        """The first ``count`` elements of a fixed deterministic enumeration"""
        raise NotImplementedError

    def random_element(self, rng: random.Random, bound: int = 2):
        raise NotImplementedError

    def prime_field(self) -> "Field":
        f: Field = self
        while f.base is not None:
            f = f.base
        return f

    def lies_in_base(self, a) -> bool:
        return False

    def project(self, a):
        """Inverse of ``embed`` for elements lying in the base"""
        raise DomainError(f"{self} has no base domain")

    def project_to(self, a, target: "Field"):
        f: Field = self
        while f != target:
            if f.base is None or not f.lies_in_base(a):
                raise DomainError(f"element does not lie in {target}")
            a = f.project(a)
            f = f.base
        return a


class RationalField(Field):
    """The rationals, elements are ``Fraction``"""

    fraction_free = True

    def _make_key(self) -> tuple:
        return ("rationals",)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def characteristic(self) -> int:
        return 0

    def from_int(self, n: int):
        return Fraction(n)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def contains(self, a) -> bool:
        return isinstance(a, (Fraction, int)) and not isinstance(a, bool)

    def parse(self, value: Any):
        if isinstance(value, bool) or isinstance(value, float):
            raise ArgumentError(f"not an exact rational: {value!r}")
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ArgumentError(f"not a rational: {value!r}") from e

    def bit_length(self, a) -> int:
        a = Fraction(a)
        return max(abs(a.numerator).bit_length(), a.denominator.bit_length())

    def normalize_row(self, row: List[Any]) -> List[Any]:
        # clear denominators, then divide out the content
        den = reduce(_lcm, (Fraction(x).denominator for x in row), 1)
        nums = [int(Fraction(x) * den) for x in row]
        content = reduce(gcd, nums, 0)
        if content > 1:
            nums = [v // content for v in nums]
        return [Fraction(v) for v in nums]

    def elements(self, count: int) -> List[Any]:
        return [Fraction(i) for i in range(count)]

    def random_element(self, rng: random.Random, bound: int = 2):
        return Fraction(rng.randint(-bound, bound))

    def __repr__(self) -> str:
        return "QQ"


class PrimeField(Field):
    """Integers modulo a prime p, elements are ints in [0, p)"""

    def __init__(self, p: int):
        super().__init__()
        if p < 2 or not isprime(p):
            raise ArgumentError(f"{p} is not prime")
        self.p = p

    def _make_key(self) -> tuple:
        return ("prime", self.p)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def characteristic(self) -> int:
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def from_int(self, n: int):
        return n % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def parse(self, value: Any):
        if isinstance(value, bool) or isinstance(value, float):
            raise ArgumentError(f"not a residue: {value!r}")
        try:
            return int(str(value).strip()) % self.p
        except ValueError as e:
            raise ArgumentError(f"not a residue mod {self.p}: {value!r}") from e

    def order(self) -> Optional[int]:
        return self.p

    def elements(self, count: int) -> List[Any]:
        if count > self.p:
            raise ArgumentError(f"GF({self.p}) has fewer than {count} elements")
        return list(range(count))

    def random_element(self, rng: random.Random, bound: int = 2):
        return rng.randrange(self.p)

    def __repr__(self) -> str:
        return f"GF({self.p})"


def _solve_square(field: Field, matrix: List[List[Any]], rhs: List[Any]) -> List[Any]:
    """Solve matrix * x = rhs for an invertible square matrix"""
    n = len(matrix)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if not field.is_zero(rows[i][c])), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        rows[c], rows[p] = rows[p], rows[c]
        inv = field.inv(rows[c][c])
        rows[c] = [field.mul(inv, v) for v in rows[c]]
        for i in range(n):
            if i != c and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[c])]
    return [rows[i][n] for i in range(n)]


class ExtensionField(Field):
    """Finite-dimensional commutative algebra over ``base`` given by structure constants.

    ``structure_constants[i][j][k]`` is the coefficient of b_k in b_i * b_j.
    Elements are tuples of base elements. ``unit`` is the coordinate vector
    of the identity (b_0 by default). A recorded root of unity ``zeta`` of
    exact order ``zeta_order`` may be attached.
    """

    def __init__(self, base: Field, degree: int, structure_constants: Sequence,
                 label: str = "", unit: Optional[Sequence[Any]] = None,
                 zeta: Optional[Tuple[Any, ...]] = None, zeta_order: Optional[int] = None,
                 basis_labels: Optional[Sequence[str]] = None):
        super().__init__()
        if degree < 1:
            raise ArgumentError("extension degree must be positive")
        self.base = base
        self.degree = degree
        self.structure_constants = tuple(
            tuple(tuple(structure_constants[i][j][k] for k in range(degree)) for j in range(degree))
            for i in range(degree)
        )
        self.label = label
        self.unit = tuple(unit) if unit is not None else tuple(
            base.one if k == 0 else base.zero for k in range(degree))
        self.zeta = tuple(zeta) if zeta is not None else None
        self.zeta_order = zeta_order
        self.basis_labels = tuple(basis_labels) if basis_labels else tuple(
            f"b{k}" for k in range(degree))
        self._terms = [
            (i, j, k, c)
            for i in range(degree) for j in range(degree) for k in range(degree)
            for c in (self.structure_constants[i][j][k],) if not base.is_zero(c)
        ]

    def _make_key(self) -> tuple:
        b = self.base
        sc = tuple(b.hash_element(c) for plane in self.structure_constants
                   for row in plane for c in row)
        return ("extension", self.base.key(), self.degree, self.label, sc)

    @property
    def zero(self):
        return tuple(self.base.zero for _ in range(self.degree))

    @property
    def one(self):
        return self.unit

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        f = self.base
        out = [f.zero] * self.degree
        nz_a = [i for i, x in enumerate(a) if not f.is_zero(x)]
        if not nz_a:
            return tuple(out)
        nz_b = {j for j, y in enumerate(b) if not f.is_zero(y)}
        if not nz_b:
            return tuple(out)
        nz_a_set = set(nz_a)
        for i, j, k, c in self._terms:
            if i in nz_a_set and j in nz_b:
                out[k] = f.add(out[k], f.mul(c, f.mul(a[i], b[j])))
        return tuple(out)

    @property
    def terms(self) -> List[Tuple[int, int, int, Any]]:
        """Nonzero structure constants as (i, j, k, c)"""
        return list(self._terms)

    def with_root_of_unity(self, zeta: Tuple[Any, ...], order: int) -> "ExtensionField":
        return ExtensionField(self.base, self.degree, self.structure_constants, self.label,
                              unit=self.unit, zeta=zeta, zeta_order=order,
                              basis_labels=self.basis_labels)

    def scale(self, c, a):
        return tuple(self.base.mul(c, x) for x in a)

    def is_zero(self, a) -> bool:
        return all(self.base.is_zero(x) for x in a)

    def eq(self, a, b) -> bool:
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def hash_element(self, a) -> int:
        return hash(tuple(self.base.hash_element(x) for x in a))

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def embed(self, a):
        return self.scale(a, self.unit)

    def basis_element(self, k: int):
        return tuple(self.base.one if i == k else self.base.zero for i in range(self.degree))

    def regular_matrix(self, a) -> List[List[Any]]:
        """Matrix of multiplication by ``a``; column j holds the coordinates of a*b_j"""
        f = self.base
        m = [[f.zero] * self.degree for _ in range(self.degree)]
        for i, j, k, c in self._terms:
            if not f.is_zero(a[i]):
                m[k][j] = f.add(m[k][j], f.mul(c, a[i]))
        return m

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        try:
            return tuple(_solve_square(self.base, self.regular_matrix(a), list(self.unit)))
        except ZeroDivisionError as e:
            raise DomainError(f"{self} is not a field: zero divisor found") from e

    def lies_in_base(self, a) -> bool:
        lead = next((k for k in range(self.degree) if not self.base.is_zero(self.unit[k])), 0)
        c = self.base.div(a[lead], self.unit[lead])
        return self.eq(a, self.embed(c))

    def project(self, a):
        if not self.lies_in_base(a):
            raise DomainError("element does not lie in the base field")
        lead = next(k for k in range(self.degree) if not self.base.is_zero(self.unit[k]))
        return self.base.div(a[lead], self.unit[lead])

    def contains(self, a) -> bool:
        return isinstance(a, tuple) and len(a) == self.degree

    def to_str(self, a) -> str:
        return "[" + ", ".join(self.base.to_str(x) for x in a) + "]"

    def format(self, a) -> Any:
        return [self.base.format(x) for x in a]

    def parse(self, value: Any):
        if not isinstance(value, (list, tuple)) or len(value) != self.degree:
            raise ArgumentError(f"expected {self.degree} coordinates, got {value!r}")
        return tuple(self.base.parse(v) for v in value)

    def bit_length(self, a) -> int:
        return max((self.base.bit_length(x) for x in a), default=0)

    def order(self) -> Optional[int]:
        q = self.base.order()
        return None if q is None else q ** self.degree

    def elements(self, count: int) -> List[Any]:
        q = self.base.order()
        if q is None:
            return [self.embed(c) for c in self.base.elements(count)]
        if count > q ** self.degree:
            raise ArgumentError(f"{self} has fewer than {count} elements")
        digits = self.base.elements(q)
        out = []
        for n in range(count):
            coords = []
            for _ in range(self.degree):
                n, r = divmod(n, q)
                coords.append(digits[r])
            out.append(tuple(coords))
        return out

    def random_element(self, rng: random.Random, bound: int = 2):
        return tuple(self.base.random_element(rng, bound) for _ in range(self.degree))

    def check_axioms(self) -> List[str]:
        """Associativity, commutativity and unit on all basis triples"""
        violations = []
        basis = [self.basis_element(k) for k in range(self.degree)]
        for i, x in enumerate(basis):
            if not self.eq(self.mul(self.unit, x), x):
                violations.append(f"unit fails on b{i}")
            for j, y in enumerate(basis):
                xy = self.mul(x, y)
                if not self.eq(xy, self.mul(y, x)):
                    violations.append(f"b{i}*b{j} != b{j}*b{i}")
                for k, z in enumerate(basis):
                    if not self.eq(self.mul(xy, z), self.mul(x, self.mul(y, z))):
                        violations.append(f"associativity fails on (b{i}, b{j}, b{k})")
        return violations

    def __repr__(self) -> str:
        return f"{self.base!r}[{self.label or self.degree}]"


class PolyRing(Ring):
    """Polynomial ring base[var]"""

    def __init__(self, base: Field, var: str = "X"):
        super().__init__()
        self.coefficient_field = base
        self.var = var

    def _make_key(self) -> tuple:
        return ("poly", self.coefficient_field.key(), self.var)

    @property
    def zero(self):
        return Poly(self.coefficient_field)

    @property
    def one(self):
        return Poly.constant(self.coefficient_field, self.coefficient_field.one)

    @property
    def characteristic(self) -> int:
        return self.coefficient_field.characteristic

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def from_int(self, n: int):
        return Poly.constant(self.coefficient_field, self.coefficient_field.from_int(n))

    def constant(self, c) -> Poly:
        return Poly.constant(self.coefficient_field, c)

    def variable(self) -> Poly:
        return Poly.x(self.coefficient_field)

    def fraction_field(self) -> "RatFuncField":
        return RatFuncField(self.coefficient_field, self.var)

    def contains(self, a) -> bool:
        return isinstance(a, Poly) and a.field == self.coefficient_field

    def format(self, a) -> Any:
        return [self.coefficient_field.format(c) for c in a.coeffs]

    def parse(self, value: Any):
        return Poly(self.coefficient_field, [self.coefficient_field.parse(v) for v in value])

    def to_str(self, a) -> str:
        return repr(a)

    def coerce(self, a, source: Ring):
        if source == self:
            return a
        return self.constant(self.coefficient_field.coerce(a, source))

    def __repr__(self) -> str:
        return f"{self.coefficient_field!r}[{self.var}]"


class RatFuncField(Field):
    """Rational function field base(var); elements are reduced ``RatFunc``"""

    def __init__(self, base: Field, var: str = "X"):
        super().__init__()
        self.base = base
        self.var = var

    def _make_key(self) -> tuple:
        return ("ratfunc", self.base.key(), self.var)

    @property
    def zero(self):
        return RatFunc(Poly(self.base))

    @property
    def one(self):
        return RatFunc(Poly.constant(self.base, self.base.one))

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def embed(self, a):
        return RatFunc(Poly.constant(self.base, a), reduce=False)

    def from_poly(self, p: Poly) -> RatFunc:
        return RatFunc(p, reduce=False)

    def variable(self) -> RatFunc:
        return RatFunc(Poly.x(self.base), reduce=False)

    def polynomial_ring(self) -> PolyRing:
        return PolyRing(self.base, self.var)

    def coerce(self, a, source: Ring):
        if isinstance(source, PolyRing) and source.coefficient_field == self.base:
            return RatFunc(a, reduce=False)
        return super().coerce(a, source)

    def lies_in_base(self, a) -> bool:
        return a.is_constant()

    def project(self, a):
        if not a.is_constant():
            raise DomainError("rational function is not constant")
        return a.num.coefficient(0)

    def contains(self, a) -> bool:
        return isinstance(a, RatFunc) and a.field == self.base

    def to_str(self, a) -> str:
        return repr(a)

    def format(self, a) -> Any:
        return {
            "num": [self.base.format(c) for c in a.num.coeffs],
            "den": [self.base.format(c) for c in a.den.coeffs],
        }

    def parse(self, value: Any):
        if not isinstance(value, dict) or "num" not in value:
            raise ArgumentError(f"expected a {{num, den}} object, got {value!r}")
        num = Poly(self.base, [self.base.parse(v) for v in value["num"]])
        den = Poly(self.base, [self.base.parse(v) for v in value.get("den", ["1"])])
        return RatFunc(num, den)

    def bit_length(self, a) -> int:
        return max((self.base.bit_length(c) for c in a.num.coeffs + a.den.coeffs), default=0)

    def elements(self, count: int) -> List[Any]:
        return [self.embed(c) for c in self.base.elements(count)]

    def random_element(self, rng: random.Random, bound: int = 2):
        coeffs = [self.base.random_element(rng, bound) for _ in range(rng.randint(1, 3))]
        return RatFunc(Poly(self.base, coeffs))

    def __repr__(self) -> str:
        return f"{self.base!r}({self.var})"


QQ = RationalField()


def field_degree_over_prime(field: Field) -> int:
    """Degree of a tower of ExtensionFields over its prime (or rational) field"""
    degree = 1
    f: Optional[Ring] = field
    while isinstance(f, ExtensionField):
        degree *= f.degree
        f = f.base
    return degree


def describe_field(field: Ring) -> Dict[str, Any]:
    """Short summary used in logs and traces"""
    info: Dict[str, Any] = {"repr": repr(field), "characteristic": field.characteristic}
    if isinstance(field, Field):
        info["order"] = field.order()
    return info
