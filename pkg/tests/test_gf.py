import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobnc.errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    IncompatibleFields,
    NonPrimeCharacteristic,
    NotASquareField,
    ReducibleModulus,
)
from frobnc.gf import (
    MAX_ORDER,
    conjugate,
    embed,
    embed_field,
    enumerate_field,
    extension_of,
    field_arith,
    field_of_order,
    frobenius_pow,
    make_field,
    parse_field_header,
)

ORDERS_UP_TO_64 = [q for q in range(2, 65) if len({p for p in range(2, q + 1) if q % p == 0
                                                      and all(p % r for r in range(2, p))}) == 1]


def naive_mul(K, a, b):
    """Schoolbook product of digit vectors reduced by the modulus (oracle for the table arithmetic)."""
    p, k = K.p, K.k
    da = [(a // p ** i) % p for i in range(k)]
    db = [(b // p ** i) % p for i in range(k)]
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(K.modulus)
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i, m in enumerate(mod):
                prod[top - k + i] = (prod[top - k + i] - c * m) % p
    return sum(prod[i] * p ** i for i in range(k))


def test_make_field_examples():
    F4 = make_field(2, 2, [1, 1, 1])
    assert F4.q == 4 and F4.modulus == (1, 1, 1)
    assert make_field(2, 1).q == 2
    F8 = make_field(2, 3, [1, 1, 0, 1])
    a = F8.a
    assert a ** 3 == a + 1


def test_make_field_errors():
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 1)
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, [1, 1])
    with pytest.raises(FieldTooLarge):
        make_field(2, 17)
    assert MAX_ORDER == 1 << 16


def test_default_modulus_matches_small_examples():
    assert field_of_order(4).modulus == (1, 1, 1)
    assert field_of_order(8).modulus == (1, 1, 0, 1)


def test_f4_arithmetic():
    K = field_of_order(4)
    a = K.a
    assert a * (a + 1) == K.one
    assert a.inverse() == a + 1
    assert field_arith("inv", a) == a + 1
    F3 = field_of_order(3)
    assert field_arith("pow", F3.element(2), 2) == F3.one


def test_division_by_zero():
    K = field_of_order(9)
    with pytest.raises(DivisionByZero):
        K.one / K.zero


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        field_of_order(4).one + field_of_order(8).one


def test_frobenius_and_conjugate_examples():
    K = field_of_order(4)
    a = K.a
    assert frobenius_pow(a, 1) == a + 1
    assert conjugate(a) == a + 1
    assert conjugate(conjugate(a)) == a
    assert frobenius_pow(field_of_order(2).one, 5) == field_of_order(2).one
    F9 = field_of_order(9)
    for c in range(3):
        x = F9.element(F9.from_int(c))
        assert conjugate(x) == x
    with pytest.raises(NotASquareField):
        conjugate(field_of_order(8).a)


def test_enumerate_field_order():
    assert [e.code for e in enumerate_field(field_of_order(2))] == [0, 1]
    F4 = field_of_order(4)
    assert [str(e) for e in enumerate_field(F4)] == ["0", "1", "a", "a+1"]
    assert len(enumerate_field(field_of_order(9))) == 9


def test_embed_examples():
    F2, F4, F16 = field_of_order(2), field_of_order(4), field_of_order(16)
    assert embed(F2.one, F4) == F4.one
    assert embed(F4.zero, F16) == F16.zero
    for x, y in itertools.product(enumerate_field(F4), repeat=2):
        assert embed(x * y, F16) == embed(x, F16) * embed(y, F16)
        assert embed(x + y, F16) == embed(x, F16) + embed(y, F16)
    with pytest.raises(IncompatibleFields):
        embed_field(field_of_order(4), field_of_order(8))


@pytest.mark.parametrize("q", [q for q in ORDERS_UP_TO_64 if q <= 27])
def test_field_axioms_exhaustive(q):
    K = field_of_order(q)
    els = range(q)
    for a in els:
        assert K.add(a, 0) == a and K.mul(a, 1) == a
        assert K.add(a, K.neg(a)) == 0
        if a:
            assert K.mul(a, K.inv(a)) == 1
        for b in els:
            assert K.mul(a, b) == naive_mul(K, a, b)
            assert K.mul(a, b) == K.mul(b, a)
            for c in els:
                assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
                assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
                assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))


@pytest.mark.parametrize("q", [32, 49, 64])
def test_field_axioms_larger(q):
    # full triple loops at q <= 64, with the multiplication table checked against the oracle
    K = field_of_order(q)
    for a in range(q):
        for b in range(q):
            ab = K.mul(a, b)
            assert ab == naive_mul(K, a, b)
            for c in range(q):
                assert K.mul(ab, c) == K.mul(a, K.mul(b, c))
                assert K.mul(a, K.add(b, c)) == K.add(ab, K.mul(a, c))


@pytest.mark.parametrize("q", ORDERS_UP_TO_64)
def test_freshman_dream_and_frobenius_fixes_field(q):
    K = field_of_order(q)
    p = K.p
    for x in range(q):
        assert K.pow(x, q) == x
        assert K.frob(x, K.k) == x
        for y in range(q):
            assert K.pow(K.add(x, y), p) == K.add(K.pow(x, p), K.pow(y, p))


@pytest.mark.parametrize("q", [4, 9, 16, 25, 49, 64])
def test_conjugation_involution_and_norm(q):
    K = field_of_order(q)
    s = K.sqrt_q
    fixed = [x for x in range(q) if K.pow(x, s) == x]
    assert len(fixed) == s
    for x in range(q):
        y = K.pow(x, s)
        assert K.pow(y, s) == x
    norms = {K.mul(x, K.pow(x, s)) for x in range(q)}
    assert norms == set(fixed)


@given(st.sampled_from([4, 8, 9, 16, 25, 27]), st.data())
def test_codes_and_literals_round_trip(q, data):
    K = field_of_order(q)
    c = data.draw(st.integers(0, q - 1))
    assert K.parse_code(K.format_code(c)) == c
    assert K.from_coeffs(K.coeffs(c)) == c


def test_header_round_trip():
    K = field_of_order(8)
    K2, extra = parse_field_header(K.header() + " n=2")
    assert K2 == K and extra == {"n": "2"}


def test_extension_of_contains_base():
    K = field_of_order(4)
    L = extension_of(K, 2)
    assert L.q == 16
    emb = embed_field(K, L)
    assert len(set(emb.images)) == 4
