"""
Cyclic field extensions in every characteristic, roots of unity and
regular-representation embeddings
"""
import logging
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from sympy import Poly as SymPoly
from sympy import cyclotomic_poly, primefactors, symbols, totient
from sympy.ntheory import n_order

from src.algebra.fields import QQ, ExtensionField, Field, PrimeField, RatFuncField, RationalField
from src.algebra.matrix import Matrix, kron
from src.algebra.poly import Poly, RatFunc, poly_gcd
from src.core.errors import ArgumentError, InternalError, SizeError
from src.models.extensions import AswLevel, AswTower, CyclicExtension
from src.models.space import BlowupPoint

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# characteristic and roots of unity
# ---------------------------------------------------------------------------

def char_divides(field: Field, d: int) -> Tuple[int, int, int]:
    """(p, s, d1) with d = d1 * p^s when the characteristic p divides d, else (0, 0, d)"""
    if d < 1:
        raise ArgumentError(f"degree must be positive, got {d}")
    acc = field.zero
    p = 0
    for k in range(1, d + 1):
        acc = field.add(acc, field.one)
        if field.is_zero(acc):
            p = k
            break
    if p == 0 or d % p:
        return 0, 0, d
    s, d1 = 0, d
    while d1 % p == 0:
        d1 //= p
        s += 1
    return p, s, d1


def has_exact_order(field: Field, z: Any, order: int) -> bool:
    if not field.eq(field.pow(z, order), field.one):
        return False
    return all(not field.eq(field.pow(z, order // q), field.one) for q in primefactors(order))


def _known_root_of_unity(field: Field, d1: int) -> Optional[Any]:
    if d1 == 1:
        return field.one
    if isinstance(field, ExtensionField) and field.zeta is not None and field.zeta_order % d1 == 0:
        return field.pow(field.zeta, field.zeta_order // d1)
    if d1 == 2 and field.characteristic != 2:
        return field.neg(field.one)
    return None


def find_root_of_unity(field: Field, d1: int) -> Optional[Any]:
    """Element of exact order d1 in a finite field, searched as a^((q-1)/d1)"""
    known = _known_root_of_unity(field, d1)
    if known is not None:
        return known
    q = field.order()
    if q is None or (q - 1) % d1:
        return None
    for a in field.elements(min(q, 64 * d1 + 2))[1:]:
        z = field.pow(a, (q - 1) // d1)
        if has_exact_order(field, z, d1):
            return z
    return None


def _extension_from_modulus(base: Field, modulus: Poly, label: str, var: str = "t") -> ExtensionField:
    """base[t]/(modulus) with basis 1, t, ..., t^(e-1)"""
    e = modulus.degree
    t = Poly.x(base)
    powers = [Poly.constant(base, base.one)]
    for _ in range(2 * e - 2):
        powers.append((powers[-1] * t) % modulus)
    sc = [[[powers[i + j].coefficient(k) for k in range(e)] for j in range(e)] for i in range(e)]
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, e)]
    return ExtensionField(base, e, sc, label=label, basis_labels=labels)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over a finite field"""
    F = f.field
    q = F.order()
    if q is None:
        raise ArgumentError("irreducibility test needs a finite field")
    e = f.degree
    if e < 1:
        return False
    if e == 1:
        return True
    x = Poly.x(F)
    if x.powmod(q ** e, f) != x % f:
        return False
    for r in primefactors(e):
        h = x.powmod(q ** (e // r), f) - x
        if not poly_gcd(h % f, f).is_one():
            return False
    return True


def find_irreducible(field: Field, e: int) -> Poly:
    """First monic irreducible polynomial of degree e in a fixed enumeration"""
    q = field.order()
    if q is None:
        raise ArgumentError("finite field expected")
    digits = field.elements(q)
    for n in range(q ** e):
        coeffs = []
        m = n
        for _ in range(e):
            m, r = divmod(m, q)
            coeffs.append(digits[r])
        # skip reducible-by-x candidates quickly
        if field.is_zero(coeffs[0]) and e > 1:
            continue
        f = Poly(field, coeffs + [field.one])
        if is_irreducible(f):
            return f
    raise InternalError(f"no irreducible polynomial of degree {e} over {field!r}")


def finite_field_extension(field: Field, e: int) -> ExtensionField:
    """The field with q^e elements as an extension of a finite field"""
    if e < 1:
        raise ArgumentError(f"extension degree must be positive, got {e}")
    q = field.order()
    f = find_irreducible(field, e)
    logger.debug(f"GF({q}^{e}) built from modulus {f!r}")
    return _extension_from_modulus(field, f, label=f"GF({q}^{e})")


def cyclotomic_field(d1: int) -> ExtensionField:
    """Q[zeta] for a primitive d1-th root of unity zeta"""
    x = symbols("x")
    coeffs = [int(c) for c in SymPoly(cyclotomic_poly(d1, x), x).all_coeffs()]
    phi = Poly(QQ, [Fraction(c) for c in reversed(coeffs)])
    if phi.degree != int(totient(d1)):
        raise InternalError(f"cyclotomic polynomial of order {d1} has the wrong degree")
    E = _extension_from_modulus(QQ, phi, label=f"Q(zeta{d1})", var="zeta")
    return E.with_root_of_unity(E.basis_element(1), d1)


def ensure_root_of_unity(field: Field, d1: int) -> Tuple[Field, Any]:
    """A field containing ``field`` and a d1-th root of unity of exact order, with that root"""
    known = _known_root_of_unity(field, d1)
    if known is not None:
        return field, known
    q = field.order()
    if q is not None:
        if d1 % field.characteristic == 0:
            raise ArgumentError(f"no root of unity of order {d1} in characteristic {field.characteristic}")
        z = find_root_of_unity(field, d1)
        if z is not None:
            return field, z
        e = int(n_order(q % d1, d1))
        E = finite_field_extension(field, e)
        z = find_root_of_unity(E, d1)
        if z is None:
            raise InternalError(f"GF({q}^{e}) has no element of order {d1}")
        logger.info(f"Extended {field!r} to degree {e} for a root of unity of order {d1}")
        return E.with_root_of_unity(z, d1), z
    if isinstance(field, RationalField):
        E = cyclotomic_field(d1)
        return E, E.zeta
    raise ArgumentError(f"cannot provide a root of unity of order {d1} over {field!r}")


# ---------------------------------------------------------------------------
# regular representation
# ---------------------------------------------------------------------------

def regular_rep_embed(E: ExtensionField) -> Callable[[Any], Matrix]:
    """x -> matrix of multiplication by x over the base field"""
    def rho(x: Any) -> Matrix:
        return Matrix.from_rows(E.base, E.regular_matrix(x), E.degree)
    return rho


def embed_matrix(M: Matrix, E: ExtensionField) -> Matrix:
    """Entrywise regular representation; block (s, t) is rho(M[s, t])"""
    rho = regular_rep_embed(E)
    e = E.degree
    F = E.base
    rows = [[F.zero] * (M.cols * e) for _ in range(M.rows * e)]
    for s in range(M.rows):
        for t in range(M.cols):
            x = M[s, t]
            if E.is_zero(x):
                continue
            block = rho(x)
            for i in range(e):
                for j in range(e):
                    rows[s * e + i][t * e + j] = block[i, j]
    return Matrix.from_rows(F, rows, M.cols * e)


def embed_point(point: BlowupPoint, E: ExtensionField) -> BlowupPoint:
    e = E.degree
    return BlowupPoint(point.a * e, point.b * e, tuple(embed_matrix(T, E) for T in point.coeffs))


# ---------------------------------------------------------------------------
# cyclic extensions of F'(X)
# ---------------------------------------------------------------------------

def _trivial_extension(K: Field, label: str) -> CyclicExtension:
    A = ExtensionField(K, 1, [[[K.one]]], label=label, basis_labels=["1"])
    return CyclicExtension(A, Matrix.identity(K, 1), ("1",), {"d": 1})


def build_kummer(base: Field, d1: int, zeta: Optional[Any] = None, var: str = "X") -> CyclicExtension:
    """Degree-d1 extension of base(X) by Y1 with Y1^d1 = X and sigma(Y1^j) = zeta^j Y1^j"""
    K = RatFuncField(base, var)
    if d1 == 1:
        return _trivial_extension(K, "kummer1")
    if zeta is None:
        zeta = _known_root_of_unity(base, d1)
    if zeta is None or not has_exact_order(base, zeta, d1):
        raise ArgumentError(f"a root of unity of exact order {d1} in {base!r} is required")
    X = K.variable()
    sc = [[[K.zero] * d1 for _ in range(d1)] for _ in range(d1)]
    for i in range(d1):
        for j in range(d1):
            if i + j < d1:
                sc[i][j][i + j] = K.one
            else:
                sc[i][j][i + j - d1] = X
    labels = ["1", "Y1"] + [f"Y1^{j}" for j in range(2, d1)]
    A = ExtensionField(K, d1, sc, label=f"kummer{d1}", basis_labels=labels)
    sigma = Matrix.from_rows(K, [[K.embed(base.pow(zeta, j)) if i == j else K.zero
                                  for j in range(d1)] for i in range(d1)], d1)
    return CyclicExtension(A, sigma, tuple(labels), {"d": d1, "kind": "kummer", "d1": d1})


def hilbert90(ext: CyclicExtension, beta: Tuple[Any, ...], p: int) -> Tuple[Any, ...]:
    """alpha with sigma(alpha) - alpha = beta^p - beta, given Tr(beta) = 1"""
    A = ext.algebra
    c = A.sub(A.pow(beta, p), beta)
    N = ext.degree
    running = A.zero
    alpha = A.zero
    for k in range(1, N):
        running = A.add(running, ext.apply_sigma(c, k - 1))
        alpha = A.add(alpha, A.mul(ext.apply_sigma(beta, k), running))
    return A.neg(alpha)


def _compose_label(power_label: str, lower: str) -> str:
    if not power_label:
        return lower
    if lower == "1":
        return power_label
    return f"{lower}*{power_label}"


def _asw_step(ext: CyclicExtension, alpha: Tuple[Any, ...], beta: Tuple[Any, ...],
              p: int, level: int) -> CyclicExtension:
    """K_{j+1} = K_j[w]/(w^p - w - alpha) with sigma(w) = w + beta"""
    A = ext.algebra
    K0 = A.base
    D = A.degree
    Dn = p * D
    sc_lower = A.structure_constants
    alpha_prods = [[A.mul(alpha, sc_lower[u][v]) for v in range(D)] for u in range(D)]

    sc = [[[K0.zero] * Dn for _ in range(Dn)] for _ in range(Dn)]
    for k in range(p):
        for k2 in range(p):
            for u in range(D):
                for v in range(D):
                    target = sc[k * D + u][k2 * D + v]
                    if k + k2 < p:
                        contributions = [(k + k2, sc_lower[u][v])]
                    else:
                        t = k + k2 - p
                        contributions = [(t + 1, sc_lower[u][v]), (t, alpha_prods[u][v])]
                    for block, coords in contributions:
                        for w, c in enumerate(coords):
                            if not K0.is_zero(c):
                                target[block * D + w] = K0.add(target[block * D + w], c)

    w = f"w{level}"
    labels = [_compose_label("" if k == 0 else (w if k == 1 else f"{w}^{k}"), A.basis_labels[u])
              for k in range(p) for u in range(D)]
    An = ExtensionField(K0, Dn, sc, label=f"K{level}", basis_labels=labels)

    def lower(x: Sequence[Any]) -> Tuple[Any, ...]:
        return tuple(x) + tuple(K0.zero for _ in range(Dn - D))

    omega = An.basis_element(D)
    sigma_omega = An.add(omega, lower(beta))
    omega_powers = [An.one]
    for _ in range(1, p):
        omega_powers.append(An.mul(omega_powers[-1], sigma_omega))
    columns = []
    for k in range(p):
        for u in range(D):
            columns.append(list(An.mul(omega_powers[k], lower(ext.sigma.column(u)))))
    sigma = Matrix.from_columns(K0, columns, Dn)
    return CyclicExtension(An, sigma, tuple(labels), {"d": Dn, "kind": "asw", "level": level})


def _poly_degree(x: RatFunc) -> int:
    return max(x.num.degree, x.den.degree)


def extension_degree_ledger(ext: CyclicExtension) -> int:
    """Largest polynomial degree among structure constants and all sigma powers"""
    degree = 0
    for _, _, _, c in ext.algebra.terms:
        degree = max(degree, _poly_degree(c))
    for ell in range(1, ext.degree):
        for c in ext.sigma_power(ell).entries:
            degree = max(degree, _poly_degree(c))
    return degree


def build_asw_tower(p: int, s: int, var: str = "Z", max_degree: Optional[int] = None) -> Tuple[AswTower, CyclicExtension]:
    """Cyclic extension of degree p^s of F_p(var) by Artin-Schreier-Witt steps"""
    Fp = PrimeField(p)
    if s < 0:
        raise ArgumentError(f"level count must be non-negative, got {s}")
    if max_degree is not None and p ** s > max_degree:
        raise SizeError(f"extension degree {p ** s} exceeds the budget {max_degree}",
                        required=p ** s, actual=max_degree)
    K0 = RatFuncField(Fp, var)
    ext = _trivial_extension(K0, "K0")
    extensions = [ext]
    levels: List[AswLevel] = []
    delta: List[int] = []
    for j in range(s):
        A = ext.algebra
        if j == 0:
            beta = A.one
            alpha = A.embed(K0.variable())
        else:
            sign = K0.from_int((-1) ** j)
            beta = A.scale(sign, A.basis_element(A.degree - 1))
            alpha = hilbert90(ext, beta, p)
        levels.append(AswLevel(alpha=alpha, beta=beta))
        ext = _asw_step(ext, alpha, beta, p, j + 1)
        extensions.append(ext)
        delta.append(extension_degree_ledger(ext))
        logger.debug(f"ASW level {j + 1}: degree {ext.degree}, polynomial degree {delta[-1]}")
    tower = AswTower(p=p, s=s, levels=levels, extensions=extensions, delta=delta)
    ext.degree_ledger.update({"d": p ** s, "kind": "asw", "p": p, "s": s, "delta": delta,
                              "degree_bound": tower.degree_bound})
    return tower, ext


def verify_asw_tower(tower: AswTower) -> List[str]:
    """Per-level Artin-Schreier identity, trace identity and degree bound"""
    violations = []
    p = tower.p
    for j, level in enumerate(tower.levels):
        ext = tower.extensions[j]
        A = ext.algebra
        lhs = A.sub(ext.apply_sigma(level.alpha), level.alpha)
        rhs = A.sub(A.pow(level.beta, p), level.beta)
        if not A.eq(lhs, rhs):
            violations.append(f"level {j}: sigma(alpha) - alpha != beta^p - beta")
        trace = A.zero
        for k in range(ext.degree):
            trace = A.add(trace, ext.apply_sigma(level.beta, k))
        if not A.eq(trace, A.one):
            violations.append(f"level {j}: trace of beta is not 1")
    for j, observed in enumerate(tower.delta, start=1):
        bound = (2 * p + 3) ** j
        if observed > bound:
            violations.append(f"level {j}: polynomial degree {observed} exceeds {bound}")
    return violations


def change_ratfunc_base(ext: CyclicExtension, target: RatFuncField) -> CyclicExtension:
    """Base change of an extension of F_p(X) to F'(X) for F' containing F_p"""
    source = ext.base
    if source == target:
        return ext
    inner = target.base

    def move(x: RatFunc) -> RatFunc:
        num = Poly(inner, [inner.coerce(c, source.base) for c in x.num.coeffs])
        den = Poly(inner, [inner.coerce(c, source.base) for c in x.den.coeffs])
        return RatFunc(num, den, reduce=False)

    A = ext.algebra
    sc = [[[move(c) for c in row] for row in plane] for plane in A.structure_constants]
    An = ExtensionField(target, A.degree, sc, label=A.label, basis_labels=A.basis_labels)
    return CyclicExtension(An, ext.sigma.map(move, target), ext.basis_labels, dict(ext.degree_ledger))


def tensor_extension(E1: CyclicExtension, E2: CyclicExtension) -> CyclicExtension:
    """E1 (x) E2 over a shared base with the product basis and sigma1 (x) sigma2"""
    K = E1.base
    if E2.base != K:
        raise ArgumentError("tensor factors must share a base field")
    D1, D2 = E1.degree, E2.degree
    D = D1 * D2
    sc = [[[K.zero] * D for _ in range(D)] for _ in range(D)]
    for i, i2, k, c1 in E1.algebra.terms:
        for j, j2, l, c2 in E2.algebra.terms:
            slot = sc[i * D2 + j][i2 * D2 + j2]
            slot[k * D2 + l] = K.add(slot[k * D2 + l], K.mul(c1, c2))
    labels = [_compose_label(b if b != "1" else "", a) for a in E1.basis_labels for b in E2.basis_labels]
    A = ExtensionField(K, D, sc, label=f"{E1.algebra.label}x{E2.algebra.label}", basis_labels=labels)
    ledger = {"d": D, "kind": "tensor", "factors": [dict(E1.degree_ledger), dict(E2.degree_ledger)]}
    return CyclicExtension(A, kron(E1.sigma, E2.sigma), tuple(labels), ledger)


def build_cyclic_extension(base: Field, d: int, zeta: Optional[Any] = None,
                           max_degree: Optional[int] = None) -> CyclicExtension:
    """Cyclic extension of degree d of base(X)"""
    if d < 1:
        raise ArgumentError(f"degree must be positive, got {d}")
    if max_degree is not None and d > max_degree:
        raise SizeError(f"extension degree {d} exceeds the budget {max_degree}", required=d, actual=max_degree)
    K = RatFuncField(base, "X")
    if d == 1:
        return _trivial_extension(K, "trivial")
    p, s, d1 = char_divides(base, d)
    if d1 > 1:
        if zeta is None:
            zeta = _known_root_of_unity(base, d1)
        if zeta is None:
            raise ArgumentError(
                f"{base!r} has no known root of unity of order {d1}; extend the field first",
                details={"order": d1},
            )
        if not has_exact_order(base, zeta, d1):
            raise ArgumentError(f"supplied root of unity does not have exact order {d1}")
    kummer = build_kummer(base, d1, zeta) if d1 > 1 else None
    if s == 0:
        ext = kummer
    else:
        _, asw = build_asw_tower(p, s, var="X")
        asw = change_ratfunc_base(asw, K)
        ext = asw if kummer is None else tensor_extension(kummer, asw)
    ext.degree_ledger.update({"d": d, "p": p, "s": s, "d1": d1})
    logger.debug(f"Cyclic extension of degree {d} over {K!r} (p={p}, s={s}, d1={d1})")
    return ext
