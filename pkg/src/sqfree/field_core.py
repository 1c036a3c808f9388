"""Finite fields F_{p^k} with exact arithmetic.

Elements are stored as a single integer *code* ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_0 + c_1 x + ...`` is the reduced representative modulo the field's
modulus.  The code is a bijection onto the canonical coefficient vector, so
equality and hashing are structural, and ascending code order is the
enumeration order of the field.

Prime fields use plain modular arithmetic.  Extension fields multiply through
discrete-log tables and add through Zech logarithms; the tables are built
lazily on first use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

__all__ = [
    "FieldError",
    "NonPrime",
    "SpecMismatch",
    "DivisionByZero",
    "TooLarge",
    "FieldSpec",
    "FieldElement",
    "make_field",
    "ff_add",
    "ff_sub",
    "ff_mul",
    "ff_neg",
    "ff_inv",
    "ff_pow",
    "ff_enumerate",
    "is_prime",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 1 << 20
MAX_CHARACTERISTIC = 1 << 31


class FieldError(Exception):
    pass


class NonPrime(FieldError, ValueError):
    pass


class SpecMismatch(FieldError, ValueError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class TooLarge(FieldError, ValueError):
    pass


def is_prime(n: int) -> bool:
    """Trial division; adequate for n < 2**31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


# --- dense polynomials over F_p as coefficient lists (ascending) ------------
# Only used to pick and check the modulus and to reduce products.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Rabin-style test: gcd(m, X^{p^d} - X) = 1 for every d <= deg(m)/2."""
    k = len(m) - 1
    if k == 1:
        return True
    if m[0] == 0:
        return False
    xpow = [0, 1]
    for _ in range(1, k // 2 + 1):
        # xpow <- xpow^p mod m
        base, e, acc = xpow, p, [1]
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, m, p)
            base = _pmulmod(base, base, m, p)
            e >>= 1
        xpow = acc
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _trim(diff), p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    # ascending code order: c_0 varies fastest
    for tail in product(range(p), repeat=k):
        low = tuple(reversed(tail))
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^k} given by a monic irreducible ``modulus`` over F_p."""

    p: int
    k: int
    modulus: tuple[int, ...]
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.p) or self.p >= MAX_CHARACTERISTIC:
            raise NonPrime(f"{self.p} is not a prime below 2^31")
        if self.k < 1:
            raise ValueError("extension degree must be positive")
        m = self.modulus
        if len(m) != self.k + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise ValueError(f"modulus {m} is not a reduced monic polynomial of degree {self.k}")
        if self.k > 1 and not _is_irreducible(list(m), self.p):
            raise ValueError(f"modulus {m} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        return self.q

    def __str__(self):
        return f"F_{self.q}" if self.k == 1 else f"F_{self.p}^{self.k}"

    # -- code <-> vector ---------------------------------------------------

    def digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = _pmod([c % self.p for c in coeffs], list(self.modulus), self.p)
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c % self.p
        return code

    def __call__(self, value) -> FieldElement:
        """Coerce an integer (mapped through Z -> F_p) or coefficient vector."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.encode(value))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    # -- arithmetic on codes -------------------------------------------------

    def _ext(self):
        t = self._tables
        if not t:
            self._build_tables()
        return t

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if q > ENUMERATION_LIMIT:
            raise TooLarge(f"log tables for q={q} exceed the budget")
        m = list(self.modulus)
        n = q - 1
        primes = [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]

        def vpow(v, e):
            acc, base = [1], v
            while e:
                if e & 1:
                    acc = _pmulmod(acc, base, m, p)
                base = _pmulmod(base, base, m, p)
                e >>= 1
            return acc

        for g in range(2, q):
            gv = _trim(list(self.digits(g)))
            if all(vpow(gv, n // r) != [1] for r in primes):
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        exp = [0] * n
        log = [-1] * q
        cur = [1]
        for i in range(n):
            c = self.encode(cur)
            exp[i] = c
            log[c] = i
            cur = _pmulmod(cur, gv, m, p)
        zech = [0] * n
        for i in range(n):
            d = list(self.digits(exp[i]))
            d[0] = (d[0] + 1) % p
            zech[i] = log[self.encode(d)]  # -1 when 1 + g^i == 0
        self._tables.update(exp=exp, log=log, zech=zech)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        t = self._ext()
        la, lb = t["log"][a], t["log"][b]
        z = t["zech"][(lb - la) % (self.q - 1)]
        if z < 0:
            return 0
        return t["exp"][(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if a == 0 or self.p == 2:
            return a
        t = self._ext()
        n = self.q - 1
        return t["exp"][(t["log"][a] + n // 2) % n]

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._ext()
        return t["exp"][(t["log"][a] + t["log"][b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        t = self._ext()
        return t["exp"][-t["log"][a] % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q, as a code."""
        return n % self.p


@dataclass(frozen=True, slots=True)
class FieldElement:
    spec: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __lt__(self, other: FieldElement):
        return self.code < other.code

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other.code
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def __str__(self):
        if self.spec.k == 1:
            return str(self.code)
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts) or "0"

    def __repr__(self):
        return f"FieldElement({self}, {self.spec})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """Build F_{p^k} using the smallest monic irreducible modulus of degree k.

    Candidates are scanned in ascending order of the base-p number
    ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``, the same order used to
    enumerate field elements, so the choice is reproducible.

    >>> make_field(2, 2).modulus
    (1, 1, 1)
    """
    if not is_prime(p) or p >= MAX_CHARACTERISTIC:
        raise NonPrime(f"{p} is not a prime below 2^31")
    if k < 1:
        raise ValueError("extension degree must be positive")
    return FieldSpec(p, k, _smallest_irreducible(p, k))


def _same(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    return a.spec


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    s = _same(a, b)
    return FieldElement(s, s.add(a.code, b.code))


def ff_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    s = _same(a, b)
    return FieldElement(s, s.sub(a.code, b.code))


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    s = _same(a, b)
    return FieldElement(s, s.mul(a.code, b.code))


def ff_neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.neg(a.code))


def ff_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.inv(a.code))


def ff_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return FieldElement(a.spec, a.spec.pow(a.code, e))


def ff_enumerate(spec: FieldSpec) -> list[FieldElement]:
    """All elements of the field in ascending canonical order, zero first."""
    if spec.q > ENUMERATION_LIMIT:
        raise TooLarge(f"q={spec.q} exceeds the enumeration limit {ENUMERATION_LIMIT}")
    return [FieldElement(spec, c) for c in range(spec.q)]
