"""Sparse multivariate integer polynomials and symbolic discriminants.

``MultiPoly`` lives in Z[A_0, ..., A_{nvars-1}].  Terms are kept in a dict from
exponent tuples to nonzero Python ints (arbitrary precision).  Iteration and
serialization follow graded lexicographic order: ascending total degree, then
ascending exponent tuple.

The symbolic discriminant of ``A_0 + A_1 T + ... + A_n T^n`` is computed as a
Sylvester determinant whose entries are themselves ``MultiPoly`` values,
expanded by cofactors with memoization on the set of used columns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .field_core import FieldElement, FieldSpec, SpecMismatch, is_prime

log = logging.getLogger(__name__)

__all__ = [
    "MultiPoly",
    "TUniOverMulti",
    "ArityMismatch",
    "DegenerateInput",
    "OutOfBudget",
    "InexactDivision",
    "NotASquare",
    "NoSignMatch",
    "mp_add",
    "mp_mul",
    "mp_neg",
    "mp_sub",
    "mp_coefficient",
    "mp_mod_p",
    "mp_sqrt_char2",
    "mp_evaluate",
    "evaluate_codes",
    "mp_serialize",
    "symbolic_resultant_T",
    "symbolic_discriminant_T",
    "symbolic_discriminant",
    "general_polynomial",
    "squares_monomial",
    "sparse_monomial",
    "verify_prop_squares",
    "verify_prop_trinomial",
    "verify_trinomial_identity",
    "TrinomialCheck",
    "MAX_DISC_DEGREE",
]

MAX_DISC_DEGREE = 9


class ArityMismatch(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class OutOfBudget(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """Raised when a division that theory guarantees to be exact is not."""


class NotASquare(ValueError):
    pass


class NoSignMatch(AssertionError):
    pass


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    """An element of Z[A_0, ..., A_{nvars-1}]."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ArityMismatch(f"exponent {e} does not fit {nvars} variables")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars, terms) -> MultiPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, nvars: int, c: int) -> MultiPoly:
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, coeff: int = 1) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): coeff} if coeff else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> MultiPoly:
        return cls(len(exps), {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        """Terms in graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def weights(self) -> set[int]:
        """Weighted degrees with weight i on A_i."""
        return {sum(i * x for i, x in enumerate(e)) for e in self.terms}

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        return mp_add(self, _lift(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return mp_sub(self, _lift(self, other))

    def __rsub__(self, other):
        return mp_sub(_lift(self, other), self)

    def __mul__(self, other):
        return mp_mul(self, _lift(self, other))

    __rmul__ = __mul__

    def __neg__(self):
        return mp_neg(self)

    def __pow__(self, e: int):
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self):
        return mp_serialize(self)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {mp_serialize(self)!r})"


def _lift(f: MultiPoly, other) -> MultiPoly:
    if isinstance(other, MultiPoly):
        return other
    if isinstance(other, int):
        return MultiPoly.const(f.nvars, other)
    raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")


def _arity(f: MultiPoly, g: MultiPoly) -> int:
    if f.nvars != g.nvars:
        raise ArityMismatch(f"{f.nvars} vs {g.nvars} variables")
    return f.nvars


def mp_add(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    n = _arity(f, g)
    out = dict(f.terms)
    for e, c in g.terms.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return MultiPoly._raw(n, out)


def mp_neg(f: MultiPoly) -> MultiPoly:
    return MultiPoly._raw(f.nvars, {e: -c for e, c in f.terms.items()})


def mp_sub(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return mp_add(f, mp_neg(g))


def mp_mul(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    n = _arity(f, g)
    if len(f.terms) > len(g.terms):
        f, g = g, f
    out: dict = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return MultiPoly._raw(n, out)


def _check_mono(f: MultiPoly, monomial) -> tuple[int, ...]:
    monomial = tuple(monomial)
    if len(monomial) != f.nvars:
        raise ArityMismatch(f"monomial of length {len(monomial)} for {f.nvars} variables")
    return monomial


def mp_coefficient(f: MultiPoly, monomial: Sequence[int]) -> int:
    return f.terms.get(_check_mono(f, monomial), 0)


def mp_mod_p(f: MultiPoly, p: int) -> MultiPoly:
    """Reduce coefficients into ``[0, p)`` and drop the ones that vanish."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return MultiPoly._raw(f.nvars, {e: c % p for e, c in f.terms.items() if c % p})


def mp_sqrt_char2(f: MultiPoly) -> MultiPoly:
    """Square root in F_2[A]: halve every exponent.

    Over F_2 the Frobenius map is additive and fixes every coefficient, so a
    polynomial is a square exactly when all its exponents are even.
    """
    out = {}
    for e, c in f.terms.items():
        if c % 2 == 0:
            continue
        if any(x % 2 for x in e):
            raise NotASquare(f"term with exponent {e} has an odd exponent")
        out[tuple(x // 2 for x in e)] = 1
    return MultiPoly._raw(f.nvars, out)


def mp_evaluate(f: MultiPoly, point: Sequence[FieldElement], spec: FieldSpec) -> FieldElement:
    """Evaluate over ``spec`` after mapping integer coefficients through Z -> F_p."""
    if len(point) != f.nvars:
        raise ArityMismatch(f"point of length {len(point)} for {f.nvars} variables")
    codes = []
    for x in point:
        if x.spec != spec:
            raise SpecMismatch(f"{x.spec} vs {spec}")
        codes.append(x.code)
    return FieldElement(spec, evaluate_codes(f, codes, spec))


def evaluate_codes(f: MultiPoly, codes: Sequence[int], spec: FieldSpec) -> int:
    """Evaluate at a point given as field codes; returns a code."""
    s = spec
    # power tables per variable, up to the largest exponent used
    maxe = [0] * f.nvars
    for e in f.terms:
        for i, x in enumerate(e):
            if x > maxe[i]:
                maxe[i] = x
    powers = []
    for i, x in enumerate(codes):
        row = [1]
        for _ in range(maxe[i]):
            row.append(s.mul(row[-1], x))
        powers.append(row)
    acc = 0
    for e, c in f.terms.items():
        t = s.from_int(c)
        if not t:
            continue
        for i, x in enumerate(e):
            if x:
                t = s.mul(t, powers[i][x])
                if not t:
                    break
        acc = s.add(acc, t)
    return acc


def mp_serialize(f: MultiPoly) -> str:
    """Canonical text: ``coeff*A_i^e*...`` terms joined by `` + `` in grlex order."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.items():
        factors = [str(c)] + [f"A_{i}^{x}" for i, x in enumerate(e) if x]
        parts.append("*".join(factors))
    return " + ".join(parts)


# --- polynomials in T with MultiPoly coefficients ---------------------------


@dataclass(frozen=True)
class TUniOverMulti:
    """``sum_i coeffs[i] * T^i`` with ``MultiPoly`` coefficients."""

    coeffs: tuple[MultiPoly, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        if cs and len({c.nvars for c in cs}) != 1:
            raise ArityMismatch("coefficients have differing numbers of variables")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def nvars(self) -> int:
        return self.coeffs[0].nvars

    def derivative(self) -> TUniOverMulti:
        return TUniOverMulti(tuple(c * i for i, c in enumerate(self.coeffs) if i))


def _single_term(f: MultiPoly):
    if len(f.terms) == 1:
        return next(iter(f.terms.items()))
    return None


def _mul_fast(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    t = _single_term(a)
    if t is None:
        t = _single_term(b)
        if t is None:
            return mp_mul(a, b)
        a, b = b, a
    e1, c1 = t
    return MultiPoly._raw(
        a.nvars, {tuple(x + y for x, y in zip(e1, e2)): c1 * c2 for e2, c2 in b.terms.items()}
    )


def _symbolic_det(rows: list[list[MultiPoly | None]], nvars: int) -> MultiPoly:
    """Laplace expansion along rows, memoized on the set of used columns.

    Rows are processed in order of their first nonzero column so the set of
    reachable column masks stays small for banded (Sylvester) matrices.
    """
    size = len(rows)
    order = sorted(range(size), key=lambda r: (next((c for c, v in enumerate(rows[r]) if v), size), r))
    # sign of the row permutation
    perm_sign = 1
    seen = [False] * size
    for i in range(size):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            perm_sign = -perm_sign
    mat = [[(c, v) for c, v in enumerate(rows[r]) if v is not None and not v.is_zero()] for r in order]
    memo: dict[int, MultiPoly] = {}
    zero = MultiPoly._raw(nvars, {})
    one = MultiPoly.const(nvars, 1)

    def det(r: int, used: int) -> MultiPoly:
        if r == size:
            return one
        hit = memo.get(used)
        if hit is not None:
            return hit
        acc: dict = {}
        for c, v in mat[r]:
            bit = 1 << c
            if used & bit:
                continue
            minor = det(r + 1, used | bit)
            if minor.is_zero():
                continue
            # position of c among the still-free columns fixes the cofactor sign
            pos = c - bin(used & (bit - 1)).count("1")
            term = _mul_fast(v, minor)
            sign = -1 if pos % 2 else 1
            for e, x in term.terms.items():
                y = acc.get(e, 0) + sign * x
                if y:
                    acc[e] = y
                else:
                    del acc[e]
        result = MultiPoly._raw(nvars, acc) if acc else zero
        memo[used] = result
        return result

    d = det(0, 0)
    return d if perm_sign == 1 else mp_neg(d)


def symbolic_resultant_T(f: TUniOverMulti, g: TUniOverMulti) -> MultiPoly:
    """Res_T(f, g) as the Sylvester determinant over Z[A].

    A constant argument ``c`` gives ``c ** deg(other)``.
    """
    if not f.coeffs or not g.coeffs:
        raise DegenerateInput("resultant with the zero polynomial")
    m, n = f.degree, g.degree
    if m + n < 1:
        raise DegenerateInput("resultant of two constants")
    nvars = f.nvars
    if g.nvars != nvars:
        raise ArityMismatch(f"{nvars} vs {g.nvars} variables")
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows: list[list[MultiPoly | None]] = []
    for i in range(n):
        row: list[MultiPoly | None] = [None] * size
        for j, c in enumerate(reversed(f.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [None] * size
        for j, c in enumerate(reversed(g.coeffs)):
            row[i + j] = c
        rows.append(row)
    return _symbolic_det(rows, nvars)


def _divide_by_monomial(f: MultiPoly, mono: tuple[int, ...], c: int) -> MultiPoly:
    out = {}
    for e, x in f.terms.items():
        q, r = divmod(x, c)
        if r or any(a < b for a, b in zip(e, mono)):
            raise InexactDivision(f"term {x}*{e} is not divisible by {c}*{mono}")
        out[tuple(a - b for a, b in zip(e, mono))] = q
    return MultiPoly._raw(f.nvars, out)


def symbolic_discriminant_T(f: TUniOverMulti) -> MultiPoly:
    """``(-1)^{d(d-1)/2} Res_T(f, f') / lc(f)`` for a polynomial of degree d >= 2 in T.

    The leading coefficient must be a single term so that the exact division
    can be carried out termwise.
    """
    d = f.degree
    if d < 2:
        raise DegenerateInput(f"discriminant needs degree >= 2 in T, got {d}")
    lead = _single_term(f.coeffs[-1])
    if lead is None:
        raise DegenerateInput("leading coefficient must be a monomial")
    res = symbolic_resultant_T(f, f.derivative())
    if (d * (d - 1) // 2) % 2:
        res = mp_neg(res)
    return _divide_by_monomial(res, *lead)


def general_polynomial(n: int) -> TUniOverMulti:
    """``A_0 + A_1 T + ... + A_n T^n`` over Z[A_0, ..., A_n]."""
    return TUniOverMulti(tuple(MultiPoly.var(n + 1, i) for i in range(n + 1)))


@lru_cache(maxsize=None)
def symbolic_discriminant(n: int) -> MultiPoly:
    """Disc_T of the general degree-n polynomial as an element of Z[A_0..A_n].

    >>> print(symbolic_discriminant(2))
    1*A_1^2 + -4*A_0^1*A_2^1
    """
    if not 2 <= n <= MAX_DISC_DEGREE:
        raise OutOfBudget(f"symbolic discriminant supports 2 <= n <= {MAX_DISC_DEGREE}, got {n}")
    disc = symbolic_discriminant_T(general_polynomial(n))
    log.debug("Disc(n=%d): %d terms", n, len(disc))
    return disc


def squares_monomial(n: int) -> tuple[int, ...]:
    """Exponents of A_1^2 A_2^2 ... A_{n-1}^2."""
    return (0,) + (2,) * (n - 1) + (0,)


def sparse_monomial(n: int) -> tuple[int, ...]:
    """Exponents of A_1^{n-1} A_{n-1}^{n-1}."""
    e = [0] * (n + 1)
    e[1] += n - 1
    e[n - 1] += n - 1
    return tuple(e)


def verify_prop_squares(n: int) -> int:
    """Signed coefficient of A_1^2 ... A_{n-1}^2 in the degree-n discriminant."""
    return mp_coefficient(symbolic_discriminant(n), squares_monomial(n))


def verify_prop_trinomial(n: int) -> int:
    """Signed coefficient of A_1^{n-1} A_{n-1}^{n-1} in the degree-n discriminant."""
    if not 3 <= n <= MAX_DISC_DEGREE:
        raise OutOfBudget(f"trinomial check needs 3 <= n <= {MAX_DISC_DEGREE}")
    return mp_coefficient(symbolic_discriminant(n), sparse_monomial(n))


@dataclass(frozen=True)
class TrinomialCheck:
    n: int
    matched: bool
    outer_sign: int
    inner_sign: int
    lhs: MultiPoly

    def __bool__(self):
        return self.matched


def verify_trinomial_identity(n: int) -> TrinomialCheck:
    """Check ``A_1^2 Disc_T(A_1 + A_{n-1} T^{n-2} + A_n T^{n-1})`` against the closed form.

    The closed form is ``s * A_1^{n-1} ((n-1)^{n-1} A_1 A_n^{n-2} + t (n-2)^{n-2} A_{n-1}^{n-1})``
    for signs ``s, t``; the matching pair is returned on the result.
    """
    if not 3 <= n <= MAX_DISC_DEGREE:
        raise OutOfBudget(f"trinomial identity needs 3 <= n <= {MAX_DISC_DEGREE}")
    nv = n + 1
    a1, an1, an = (MultiPoly.var(nv, i) for i in (1, n - 1, n))
    zero = MultiPoly.const(nv, 0)
    coeffs = [zero] * n
    coeffs[0] = a1
    coeffs[n - 2] = coeffs[n - 2] + an1
    coeffs[n - 1] = an
    lhs = a1 * a1 * symbolic_discriminant_T(TUniOverMulti(tuple(coeffs)))
    base = a1 ** (n - 1)
    first = base * a1 * an ** (n - 2) * (n - 1) ** (n - 1)
    second = base * an1 ** (n - 1) * (n - 2) ** (n - 2)
    for s in (1, -1):
        for t in (1, -1):
            if lhs == (first + second * t) * s:
                log.info("trinomial identity n=%d holds with signs (%+d, %+d)", n, s, t)
                return TrinomialCheck(n, True, s, t, lhs)
    raise NoSignMatch(f"no sign pair matches the trinomial discriminant for n={n}")
