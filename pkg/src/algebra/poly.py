"""
Dense univariate polynomials and rational functions over an exact field.

A polynomial a_0 + a_1 X + ... + a_n X^n is stored as the tuple
(a_0, ..., a_n) of field elements, low to high, with a nonzero leading
coefficient; the zero polynomial is the empty tuple. The field object
supplies the arithmetic (see ``src.algebra.fields``), so the same code
serves prime fields, the rationals, tower extensions and nested
rational function fields.
"""
from typing import Any, Iterable, Optional, Tuple

from src.core.errors import DomainError


class Poly:
    """Immutable dense polynomial over ``field``"""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs: Iterable[Any] = ()):
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs: Tuple[Any, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def constant(cls, field, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field, degree: int, c=None) -> "Poly":
        c = field.one if c is None else c
        return cls(field, [field.zero] * degree + [c])

    @classmethod
    def x(cls, field) -> "Poly":
        return cls.monomial(field, 1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.field.eq(self.coeffs[0], self.field.one)

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other: "Poly") -> None:
        if other.field is not self.field and other.field != self.field:
            raise DomainError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, [f.add(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, [f.sub(self.coefficient(i), other.coefficient(i)) for i in range(n)])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.field)
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not f.is_zero(b):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, out)

    def scale(self, c) -> "Poly":
        return Poly(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k"""
        if self.is_zero():
            return self
        return Poly(self.field, [self.field.zero] * k + list(self.coeffs))

    def __pow__(self, e: int) -> "Poly":
        result = Poly.constant(self.field, self.field.one)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return Poly(f), self
        quot = [f.zero] * dq
        inv_lc = f.inv(other.lc)
        m = len(other.coeffs) - 1
        for k in range(dq - 1, -1, -1):
            c = rem[k + m]
            if f.is_zero(c):
                continue
            c = f.mul(c, inv_lc)
            quot[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b))
        return Poly(f, quot), Poly(f, rem[:m])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def evaluate(self, x):
        """Horner evaluation; ``x`` must lie in the coefficient field"""
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def powmod(self, e: int, modulus: "Poly") -> "Poly":
        result = Poly.constant(self.field, self.field.one) % modulus
        base = self % modulus
        while e > 0:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly) or len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.field.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self.field.hash_element(c) for c in self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            terms.append(f"({self.field.to_str(c)})*X^{i}" if i else f"({self.field.to_str(c)})")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)"""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g monic"""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.constant(f, f.one), Poly(f)
    t0, t1 = Poly(f), Poly.constant(f, f.one)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = f.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


class RatFunc:
    """Reduced fraction num/den with den monic; zero is 0/1"""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Optional[Poly] = None, reduce: bool = True):
        f = num.field
        if den is None:
            den = Poly.constant(f, f.one)
        if den.is_zero():
            raise DomainError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(f), Poly.constant(f, f.one)
        elif reduce and not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num // g, den // g
        if not f.eq(den.lc, f.one):
            inv = f.inv(den.lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def field(self):
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.num - other.num, self.den)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_polynomial() and other.is_polynomial():
            return RatFunc(self.num * other.num, reduce=False)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduce=False)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def evaluate(self, x):
        """Value at ``x``; raises DomainError at a pole"""
        d = self.den.evaluate(x)
        if self.field.is_zero(d):
            raise DomainError("evaluation at a pole")
        return self.field.div(self.num.evaluate(x), d)

    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((hash(self.num), hash(self.den)))
        return self._hash

    def __repr__(self) -> str:
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"
