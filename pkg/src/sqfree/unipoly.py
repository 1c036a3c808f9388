"""Dense univariate polynomials over a finite field.

A :class:`UniPoly` keeps its coefficients as field codes (see
:mod:`sqfree.field_core`), lowest degree first, with no trailing zeros.
The squarefree test, the Sylvester resultant and the discriminant all work
on those code lists directly; the public ``coeffs`` view hands back
:class:`FieldElement` objects.
"""

from __future__ import annotations

from itertools import product

from .field_core import FieldElement, FieldSpec, SpecMismatch

__all__ = [
    "UniPoly",
    "PolyError",
    "BothZero",
    "ZeroPolynomial",
    "DegenerateInput",
    "DegreeTooSmall",
    "BudgetExceeded",
    "up_add",
    "up_sub",
    "up_mul",
    "up_divmod",
    "up_derivative",
    "up_gcd",
    "is_squarefree",
    "up_resultant",
    "up_discriminant",
    "squarefree_oracle",
    "monic_polys",
]


class PolyError(Exception):
    pass


class BothZero(PolyError, ValueError):
    pass


class ZeroPolynomial(PolyError, ValueError):
    pass


class DegenerateInput(PolyError, ValueError):
    pass


class DegreeTooSmall(PolyError, ValueError):
    pass


class BudgetExceeded(PolyError, ValueError):
    pass


NEG_INFINITY = float("-inf")


def _norm(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class UniPoly:
    """Polynomial ``c_0 + c_1 T + ... + c_d T^d`` over ``spec``."""

    __slots__ = ("spec", "codes")

    def __init__(self, spec: FieldSpec, coeffs=()):
        self.spec = spec
        codes = [spec(c).code for c in coeffs]
        self.codes = tuple(_norm(codes))

    @classmethod
    def _raw(cls, spec, codes) -> UniPoly:
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.codes = tuple(codes)
        return obj

    @classmethod
    def from_codes(cls, spec: FieldSpec, codes) -> UniPoly:
        return cls._raw(spec, _norm(list(codes)))

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.spec, c) for c in self.codes)

    @property
    def degree(self):
        """Degree, or ``-inf`` for the zero polynomial."""
        return len(self.codes) - 1 if self.codes else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.codes

    @property
    def lc(self) -> FieldElement:
        if not self.codes:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return FieldElement(self.spec, self.codes[-1])

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.spec == other.spec and self.codes == other.codes

    def __hash__(self):
        return hash((self.spec, self.codes))

    def __add__(self, other):
        return up_add(self, other)

    def __sub__(self, other):
        return up_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = UniPoly(self.spec, [other])
        return up_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return UniPoly._raw(self.spec, [self.spec.neg(c) for c in self.codes])

    def __call__(self, x: FieldElement) -> FieldElement:
        s = self.spec
        acc = 0
        for c in reversed(self.codes):
            acc = s.add(s.mul(acc, x.code), c)
        return FieldElement(s, acc)

    def __repr__(self):
        if not self.codes:
            return "0"
        terms = []
        for i in range(len(self.codes) - 1, -1, -1):
            c = self.codes[i]
            if not c:
                continue
            cs = str(FieldElement(self.spec, c))
            if self.spec.k > 1 and "+" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)


def _check(f: UniPoly, g: UniPoly) -> FieldSpec:
    if f.spec != g.spec:
        raise SpecMismatch(f"{f.spec} vs {g.spec}")
    return f.spec


# --- raw code-list kernels --------------------------------------------------


def _add(s, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = s.add(out[i], c)
    return _norm(out)


def _mul(s, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = s.add(out[i + j], s.mul(ai, bj))
    return _norm(out)


def _divmod(s, a, b):
    a = list(a)
    db = len(b) - 1
    inv = s.inv(b[-1])
    quot = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db:
        c = s.mul(a[-1], inv)
        shift = len(a) - 1 - db
        quot[shift] = c
        for i, bi in enumerate(b):
            if bi:
                a[shift + i] = s.sub(a[shift + i], s.mul(c, bi))
        a.pop()
        _norm(a)
    return _norm(quot), a


def _monic(s, a):
    if not a or a[-1] == 1:
        return list(a)
    inv = s.inv(a[-1])
    return [s.mul(c, inv) for c in a]


def _gcd(s, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod(s, a, b)[1]
    return _monic(s, a)


def _derivative(s, a):
    p = s.p
    return _norm([s.mul(s.from_int(i), a[i]) for i in range(1, len(a))])


def _gcd_degree_prime(a, b, p):
    """deg gcd(a, b) over F_p with inline modular arithmetic; b nonzero."""
    while b:
        db = len(b) - 1
        inv = pow(b[-1], -1, p)
        a = list(a)
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            shift = len(a) - 1 - db
            if c:
                for i in range(db):
                    a[shift + i] = (a[shift + i] - c * b[i]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _gcd_degree_ext(a, b, spec):
    """deg gcd(a, b) over F_{p^k}, working with Zech logarithms; b nonzero."""
    t = spec._ext()
    exp, log, zech = t["exp"], t["log"], t["zech"]
    n = spec.q - 1
    half = n // 2 if spec.p != 2 else 0  # log(-1)
    while b:
        db = len(b) - 1
        lb = [log[c] if c else -1 for c in b]
        a = list(a)
        while len(a) - 1 >= db:
            shift = len(a) - 1 - db
            # subtract (a_lead / b_lead) * X^shift * b, i.e. add -c * b
            lc = (log[a[-1]] - lb[-1] + half) % n
            for i in range(db):
                if lb[i] < 0:
                    continue
                term = (lc + lb[i]) % n
                cur = a[shift + i]
                if not cur:
                    a[shift + i] = exp[term]
                    continue
                lcur = log[cur]
                z = zech[(term - lcur) % n]
                a[shift + i] = 0 if z < 0 else exp[(lcur + z) % n]
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def squarefree_codes(spec: FieldSpec, codes) -> bool:
    """Squarefree test on a trimmed code list; zero counts as not squarefree."""
    n = len(codes) - 1
    if n < 0:
        return False
    if n == 0:
        return True
    if spec.k == 1:
        p = spec.p
        d = [i * codes[i] % p for i in range(1, n + 1)]
        while d and d[-1] == 0:
            d.pop()
        if not d:
            return False
        return _gcd_degree_prime(codes, d, p) == 0
    d = _derivative(spec, codes)
    if not d:
        return False
    return _gcd_degree_ext(codes, d, spec) == 0


# --- public operations ------------------------------------------------------


def up_add(f: UniPoly, g: UniPoly) -> UniPoly:
    s = _check(f, g)
    return UniPoly._raw(s, _add(s, f.codes, g.codes))


def up_sub(f: UniPoly, g: UniPoly) -> UniPoly:
    s = _check(f, g)
    return UniPoly._raw(s, _add(s, f.codes, [s.neg(c) for c in g.codes]))


def up_mul(f: UniPoly, g: UniPoly) -> UniPoly:
    s = _check(f, g)
    return UniPoly._raw(s, _mul(s, f.codes, g.codes))


def up_divmod(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    s = _check(f, g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q, r = _divmod(s, f.codes, g.codes)
    return UniPoly._raw(s, q), UniPoly._raw(s, r)


def up_derivative(f: UniPoly) -> UniPoly:
    """Formal derivative; the factor i is taken mod p."""
    return UniPoly._raw(f.spec, _derivative(f.spec, f.codes))


def up_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    s = _check(f, g)
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return UniPoly._raw(s, _gcd(s, f.codes, g.codes))


def is_squarefree(f: UniPoly) -> bool:
    """True iff no irreducible factor divides ``f`` twice.

    Uses ``deg gcd(f, f') == 0``.  When ``f' == 0`` the polynomial is a p-th
    power over a finite field, which the criterion correctly rejects.
    """
    if f.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    return squarefree_codes(f.spec, f.codes)


def _det(s: FieldSpec, rows: list[list[int]]) -> int:
    """Determinant over the field by Gaussian elimination with row pivoting."""
    m = [list(r) for r in rows]
    size = len(m)
    det = 1
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = s.neg(det)
        pv = m[col][col]
        det = s.mul(det, pv)
        inv = s.inv(pv)
        for r in range(col + 1, size):
            if m[r][col]:
                factor = s.mul(m[r][col], inv)
                row, prow = m[r], m[col]
                for c in range(col, size):
                    if prow[c]:
                        row[c] = s.sub(row[c], s.mul(factor, prow[c]))
    return det


def sylvester_rows(a, b) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists (ascending), as rows.

    Rows ``0..deg b - 1`` carry shifts of ``a``; the remaining rows carry
    shifts of ``b``.  Columns run from the highest power down.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return rows


def up_resultant(f: UniPoly, g: UniPoly) -> FieldElement:
    """Res(f, g) as the determinant of the Sylvester matrix.

    A nonzero constant argument ``c`` gives ``c ** deg(other)``.
    """
    s = _check(f, g)
    if f.is_zero() or g.is_zero():
        raise DegenerateInput("resultant with the zero polynomial")
    df, dg = f.degree, g.degree
    if df == 0 and dg == 0:
        raise DegenerateInput("resultant of two constants")
    if df == 0:
        return FieldElement(s, s.pow(f.codes[0], dg))
    if dg == 0:
        return FieldElement(s, s.pow(g.codes[0], df))
    return FieldElement(s, _det(s, sylvester_rows(f.codes, g.codes)))


def up_discriminant(f: UniPoly) -> FieldElement:
    """``(-1)^{n(n-1)/2} Res(f, f') / lc(f)`` for ``deg f = n >= 2``.

    ``f'`` enters the Sylvester matrix at its formal degree ``n - 1`` even when
    ``p`` kills its top coefficients, so the value is the universal
    discriminant specialised to ``f``.  A vanishing ``f'`` gives 0.
    """
    n = f.degree
    if f.is_zero() or n < 2:
        raise DegreeTooSmall(f"discriminant needs degree >= 2, got {n}")
    s = f.spec
    c = f.codes
    d = [s.mul(s.from_int(i), c[i]) for i in range(1, n + 1)]
    if not any(d):
        return FieldElement(s, 0)
    res = _det(s, sylvester_rows(c, d))
    if (n * (n - 1) // 2) % 2:
        res = s.neg(res)
    return FieldElement(s, s.mul(res, s.inv(c[-1])))


def monic_polys(spec: FieldSpec, degree: int):
    """Yield every monic polynomial of the given degree, in code order."""
    for low in product(range(spec.q), repeat=degree):
        yield UniPoly._raw(spec, low[::-1] + (1,))


ORACLE_MAX_DEGREE = 12
ORACLE_MAX_Q = 64


def squarefree_oracle(f: UniPoly) -> bool:
    """Brute force: search every monic ``g`` of degree ``1..deg f // 2`` with ``g^2 | f``."""
    s = f.spec
    n = f.degree
    if f.is_zero() or n < 1 or n > ORACLE_MAX_DEGREE or s.q > ORACLE_MAX_Q:
        raise BudgetExceeded(f"oracle handles 1 <= deg <= {ORACLE_MAX_DEGREE}, q <= {ORACLE_MAX_Q}")
    if s.q ** (n // 2) > 10**7:
        raise BudgetExceeded("too many candidate divisors")
    for d in range(1, n // 2 + 1):
        for g in monic_polys(s, d):
            sq = _mul(s, g.codes, g.codes)
            if not _divmod(s, f.codes, sq)[1]:
                return False
    return True
