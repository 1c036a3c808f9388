from itertools import product

import numpy as np
import pytest

from sqfree.field_core import (
    DivisionByZero,
    FieldElement,
    NonPrime,
    SpecMismatch,
    TooLarge,
    ff_add,
    ff_enumerate,
    ff_inv,
    ff_mul,
    ff_pow,
    ff_sub,
    make_field,
)

# fields exercised by the property checks: (p, k)
SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (2, 8), (13, 1)]


def brute_is_irreducible(m, p):
    """No factorization into two monic polynomials of positive degree (enumeration)."""
    k = len(m) - 1

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    for d in range(1, k // 2 + 1):
        for a_low in product(range(p), repeat=d):
            for b_low in product(range(p), repeat=k - d):
                if mul(list(a_low) + [1], list(b_low) + [1]) == list(m):
                    return False
    return True


def code_of(low, p):
    return sum(c * p**i for i, c in enumerate(low))


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_is_smallest_irreducible(p, k):
    spec = make_field(p, k)
    assert brute_is_irreducible(spec.modulus, p)
    mine = code_of(spec.modulus[:-1], p)
    for low in product(range(p), repeat=k):
        if code_of(low, p) < mine:
            assert not brute_is_irreducible(list(low) + [1], p)


def test_make_field_examples():
    assert make_field(5, 1).q == 5
    assert make_field(2, 2).modulus == (1, 1, 1)
    with pytest.raises(NonPrime):
        make_field(4, 1)
    with pytest.raises(NonPrime):
        make_field(1, 1)


def test_only_monic_irreducible_quadratic_over_f2():
    irreducible = [m for m in ([a, b, 1] for a, b in product(range(2), repeat=2)) if brute_is_irreducible(m, 2)]
    assert irreducible == [[1, 1, 1]]


def test_make_field_deterministic():
    a = make_field.__wrapped__(3, 4)
    b = make_field.__wrapped__(3, 4)
    assert a.modulus == b.modulus
    assert a == b


def test_prime_field_arithmetic():
    F5 = make_field(5)
    assert ff_add(F5(2), F5(4)) == F5(1)
    assert ff_sub(F5(2), F5(4)) == F5(3)
    assert ff_inv(F5(2)) == F5(3)
    assert ff_pow(F5(2), 4) == F5.one
    F2 = make_field(2)
    assert ff_add(F2(1), F2(1)) == F2.zero


def test_f4_examples():
    F4 = make_field(2, 2)
    x = F4([0, 1])
    assert ff_mul(x, x) == F4([1, 1])
    assert ff_inv(x) == F4([1, 1])
    assert ff_pow(x, 3) == F4.one
    assert ff_pow(x, 0) == F4.one
    assert ff_pow(F4.zero, 0) == F4.one
    assert [e.coeffs for e in ff_enumerate(F4)] == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_enumeration_small():
    assert [e.code for e in ff_enumerate(make_field(2))] == [0, 1]
    assert [e.code for e in ff_enumerate(make_field(3))] == [0, 1, 2]


def test_enumeration_limit():
    with pytest.raises(TooLarge):
        ff_enumerate(make_field(2, 21))


def test_errors():
    F5, F7 = make_field(5), make_field(7)
    with pytest.raises(SpecMismatch):
        ff_add(F5(1), F7(1))
    with pytest.raises(DivisionByZero):
        ff_inv(F5.zero)
    with pytest.raises(DivisionByZero):
        ff_inv(make_field(3, 2).zero)


def test_element_vector_is_canonical():
    F9 = make_field(3, 2)
    for e in ff_enumerate(F9):
        assert len(e.coeffs) == 2
        assert all(0 <= c < 3 for c in e.coeffs)
        assert F9(list(e.coeffs)) == e


def schoolbook_mul(spec, a, b):
    """Reference product: multiply coefficient vectors and reduce by the modulus."""
    p, m = spec.p, spec.modulus
    out = [0] * (2 * spec.k - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    for d in range(len(out) - 1, spec.k - 1, -1):
        c = out[d] % p
        for i in range(spec.k + 1):
            out[d - spec.k + i] -= c * m[i]
    return tuple(c % p for c in out[: spec.k])


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_table_mul_matches_schoolbook(p, k):
    spec = make_field(p, k)
    elems = ff_enumerate(spec)
    for a in elems:
        for b in elems:
            assert (a * b).coeffs == schoolbook_mul(spec, a, b)
            assert (a + b).coeffs == tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs))


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_random(p, k):
    spec = make_field(p, k)
    rng = np.random.default_rng(1234 + p * 100 + k)
    triples = rng.integers(0, spec.q, size=(10_000, 3))
    zero, one = spec.zero, spec.one
    for ca, cb, cc in triples.tolist():
        a, b, c = FieldElement(spec, ca), FieldElement(spec, cb), FieldElement(spec, cc)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        assert a - b == a + (-b)


@pytest.mark.parametrize("p,k", [f for f in SMALL_FIELDS if f[0] ** f[1] <= 256])
def test_fermat_and_inverse_exhaustive(p, k):
    spec = make_field(p, k)
    for a in ff_enumerate(spec):
        assert ff_pow(a, spec.q) == a
        if a:
            inv = ff_inv(a)
            assert a * inv == spec.one and inv * a == spec.one


def test_integer_coercion_maps_through_prime_field():
    F9 = make_field(3, 2)
    assert F9(4) == F9(1)
    assert F9(-1) == F9([2, 0])


@pytest.mark.parametrize("p,k", [(3, 2), (5, 2), (2, 3), (3, 3)])
def test_negation_matches_digitwise(p, k):
    spec = make_field(p, k)
    for a in ff_enumerate(spec):
        assert (-a).coeffs == tuple(-d % p for d in a.coeffs)
