import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobnc.errors import CharacteristicTwo, DegreeMismatch, NotHermitian, ZeroMatrix, ZeroPolynomial
from frobnc.frobcore import (
    SesquiMatrix,
    as_frobenius_form,
    compute_F10,
    compute_Fab,
    congruence,
    decomposition_forms,
    hermitian_decompose,
    hermitian_normalize,
    hermitian_tests,
    is_frobenius_nonclassical,
    is_hermitian_hypersurface,
    multi_fn_profile,
    pointwise_fn_check,
)
from frobnc.gf import field_of_order
from frobnc.mpoly import HomogPoly, change_field, parse_poly, poly_power

from conftest import polys

SPACE_FILLING = "x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2"


# ------------------------------------------------------------ independent F_{a,b} oracle

def _dict_mul(K, f, g):
    out = {}
    for (e1, c1), (e2, c2) in itertools.product(f.items(), g.items()):
        e = tuple(a + b for a, b in zip(e1, e2))
        out[e] = K.add(out.get(e, 0), K.mul(c1, c2))
    return {e: c for e, c in out.items() if c}


def _dict_partial(K, f, i):
    out = {}
    for e, c in f.items():
        if e[i]:
            c2 = K.mul(c, K.from_int(e[i] % K.p))
            if c2:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c2
    return out


def oracle_Fab(F, a, b, q):
    """sum_i x_i^(q^a) (dF/dx_i)^(q^b) by repeated multiplication of term dictionaries."""
    K = F.field
    n = F.nvars
    total = {}
    for i in range(n):
        d = _dict_partial(K, dict(F.terms), i)
        if not d:
            continue
        powd = {(0,) * n: 1}
        for _ in range(q ** b):
            powd = _dict_mul(K, powd, d)
        mono = tuple(q ** a if j == i else 0 for j in range(n))
        for e, c in _dict_mul(K, powd, {mono: 1}).items():
            total[e] = K.add(total.get(e, 0), c)
    return {e: c for e, c in total.items() if c}


@given(polys(orders=(2, 3, 4, 5), max_vars=3, max_deg=4))
def test_F10_matches_oracle(F):
    assert compute_F10(F, F.field.q).terms == oracle_Fab(F, 1, 0, F.field.q)


@given(polys(orders=(2, 4), max_vars=3, max_deg=3), st.sampled_from([(1, 1), (2, 0), (2, 1)]))
def test_Fab_matches_oracle(F, ab):
    a, b = ab
    assert compute_Fab(F, a, b, 2).terms == oracle_Fab(F, a, b, 2)


# ------------------------------------------------------------ F_{1,0} examples

def test_hermitian_cubic_F10_is_square(herm_cubic):
    assert compute_Fab(herm_cubic, 1, 0, 4) == poly_power(herm_cubic, 2)


def test_space_filling_F10_vanishes():
    F = parse_poly(SPACE_FILLING, field_of_order(2), 4)
    assert compute_F10(F, 2).is_zero()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_skew_form_over_square_field(q):
    K = field_of_order(q)
    F = parse_poly(f"x0^{q}*x1 - x0*x1^{q} + x2^{q}*x3 - x2*x3^{q}", K, 4)
    FL = change_field(F, field_of_order(q * q))
    assert compute_Fab(FL, 1, 0, q * q) == -poly_power(FL, q)


# ------------------------------------------------------------ classification

def test_classification_examples(herm_cubic, dgz):
    v = is_frobenius_nonclassical(herm_cubic, 4)
    assert v.nonclassical and v.f10_kind == "scalar_power" and v.e == 2 and v.c.code == 1
    cub = parse_poly("x0^3 + x1^3 + x2^3", field_of_order(2), 3)
    assert compute_F10(cub, 2) == parse_poly("x0^4 + x1^4 + x2^4", field_of_order(2), 3)
    v = is_frobenius_nonclassical(cub, 2)
    assert not v.nonclassical and v.kind == "not_divisible"
    v = is_frobenius_nonclassical(dgz, 2)
    assert v.nonclassical and v.kind == "zero"
    with pytest.raises(ZeroPolynomial):
        is_frobenius_nonclassical(HomogPoly.zero(field_of_order(2), 3, 2), 2)


def test_classification_json_shape(herm_cubic):
    js = is_frobenius_nonclassical(herm_cubic, 4).to_json()
    assert set(js) == {"nonclassical", "kind", "c", "e", "quotient"}
    assert js["kind"] == "scalar_power" and js["quotient"] == "x0^3 + x1^3 + x2^3"


@given(polys(orders=(2, 3, 4, 5, 9), max_vars=3, max_deg=4), st.data())
def test_classification_invariant_under_scaling(F, data):
    c = data.draw(st.integers(1, F.field.q - 1))
    a = is_frobenius_nonclassical(F, F.field.q)
    b = is_frobenius_nonclassical(F.scale(F.field.element(c)), F.field.q)
    assert (a.nonclassical, a.kind, a.e) == (b.nonclassical, b.kind, b.e)


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.data())
def test_rational_hyperplanes_are_nonclassical(q, data):
    K = field_of_order(q)
    n = data.draw(st.integers(1, 4))
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n).filter(any))
    assert is_frobenius_nonclassical(HomogPoly.linear(K, coeffs), q).nonclassical


@given(polys(orders=(2, 3, 4), max_vars=3, max_deg=3))
def test_divisible_classification_has_exact_quotient(F):
    v = is_frobenius_nonclassical(F, F.field.q)
    if v.nonclassical:
        assert F * v.quotient == compute_F10(F, F.field.q)
    if v.kind == "scalar_power":
        assert compute_F10(F, F.field.q) == poly_power(F, v.e).scale(v.c)


# ------------------------------------------------------------ pointwise oracle

def test_pointwise_examples(herm_cubic):
    assert pointwise_fn_check(herm_cubic, 4, 1)
    v = pointwise_fn_check(herm_cubic, 4, 2)
    assert v and v.field.q == 16
    cub = parse_poly("x0^3 + x1^3 + x2^3", field_of_order(2), 3)
    v = pointwise_fn_check(cub, 2, 2)
    assert not v and v.counterexample is not None and v.field.q == 4


FN_EXAMPLES = [
    ("x0^3 + x1^3 + x2^3", 4, 3),
    (SPACE_FILLING, 2, 4),
    ("x0^4+x1^4+x2^4+x0^2*x1^2+x0^2*x2^2+x1^2*x2^2+x0^2*x1*x2+x0*x1^2*x2+x0*x1*x2^2", 2, 3),
    ("x0^3*x1 - x0*x1^3", 3, 2),
    ("x0^2*x1 + x0*x1^2", 2, 2),
    ("x0*x1*x2", 2, 3),
    ("x0*x1 + x1^2", 3, 3),
]


@pytest.mark.parametrize("text,q,n", FN_EXAMPLES)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_nonclassical_passes_pointwise(text, q, n, m):
    F = parse_poly(text, field_of_order(q), n)
    assert is_frobenius_nonclassical(F, q).nonclassical
    assert pointwise_fn_check(F, q, m)


@given(polys(orders=(2, 3, 4), max_vars=3, max_deg=3, min_deg=1))
def test_random_nonclassical_passes_pointwise(F):
    q = F.field.q
    if is_frobenius_nonclassical(F, q).nonclassical:
        for m in (1, 2) if q > 2 else (1, 2, 3):
            assert pointwise_fn_check(F, q, m)


# ------------------------------------------------------------ several base fields

def test_multi_fn_examples():
    F3 = field_of_order(3)
    skew = parse_poly("x0^3*x1 - x0*x1^3 + x2^3*x3 - x2*x3^3", F3, 4)
    prof = multi_fn_profile(skew, 3, [1, 2])
    assert prof[1].nonclassical and prof[2].nonclassical
    F8 = field_of_order(8)
    fermat = parse_poly("x0^7 + x1^7 + x2^7", F8, 3)
    v = multi_fn_profile(fermat, 8, [1])[1]
    assert v.nonclassical and v.kind == "scalar_power" and v.e == 2 and v.c.code == 1
    assert compute_F10(fermat, 8) == poly_power(fermat, 2)
    generic = parse_poly("x0^2*x1 + x1^2*x2 + x2^2*x0 + x0*x1*x2 + x2^3", field_of_order(2), 3)
    prof = multi_fn_profile(generic, 2, [1, 2])
    assert not prof[1].nonclassical and not prof[2].nonclassical


# ------------------------------------------------------------ Frobenius forms

def test_as_frobenius_form_examples(herm_cubic, dgz):
    M = as_frobenius_form(herm_cubic, 2)
    assert M == SesquiMatrix.identity(herm_cubic.field, 3, 2)
    S = as_frobenius_form(parse_poly(SPACE_FILLING, field_of_order(2), 4), 2)
    assert all(S.rows[i][i] == 0 for i in range(4))
    assert S.rows == ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
    with pytest.raises(DegreeMismatch):
        as_frobenius_form(dgz, 2)
    assert as_frobenius_form(parse_poly("x0^3 + x0*x1*x2", field_of_order(4), 3), 2) is None


@given(st.sampled_from([(2, 4), (3, 9), (2, 2), (3, 3), (4, 16)]), st.data())
def test_frobenius_form_round_trip(spec, data):
    qp, q = spec
    K = field_of_order(q)
    n = data.draw(st.integers(1, 3))
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    M = SesquiMatrix(K, rows, qp)
    F = M.form()
    if F.is_zero():
        return
    assert as_frobenius_form(F, qp) == M


def test_hermitian_tests_examples(F4):
    F9 = field_of_order(9)
    assert hermitian_tests(SesquiMatrix.identity(F4, 3, 2))["is_hermitian"]
    t = hermitian_tests(SesquiMatrix(F9, [[0, 1], [-1, 0]], 3))
    assert t["is_skew_hermitian"] and not t["is_hermitian"]
    t = hermitian_tests(SesquiMatrix(F4, [[0, F4.a.code], [0, 0]], 2))
    assert t == {"is_hermitian": False, "is_skew_hermitian": False}


def test_decompose_examples():
    F9 = field_of_order(9)
    H = SesquiMatrix.identity(F9, 2, 3)
    Z = SesquiMatrix(F9, [[0, 0], [0, 0]], 3)
    assert hermitian_decompose(H) == (H, Z)
    S = SesquiMatrix(F9, [[0, 1], [-1, 0]], 3)
    assert hermitian_decompose(S) == (Z, S)
    with pytest.raises(CharacteristicTwo):
        hermitian_decompose(SesquiMatrix.identity(field_of_order(4), 2, 2))


def test_decomposition_identity_exhaustive_2x2_over_F9():
    K = field_of_order(9)
    for a, b, c, d in itertools.product(range(9), repeat=4):
        M = SesquiMatrix(K, [[a, b], [c, d]], 3)
        M1, M2 = hermitian_decompose(M)
        assert M1 + M2 == M
        assert hermitian_tests(M1)["is_hermitian"] and hermitian_tests(M2)["is_skew_hermitian"]
        G, F1, F2 = decomposition_forms(M)
        assert G == poly_power(F1, 3) - poly_power(F2, 3)


def _random_invertible(K, n, qp, rnd):
    while True:
        P = SesquiMatrix(K, [[rnd.randrange(K.q) for _ in range(n)] for _ in range(n)], qp)
        from frobnc.vecfield import rank
        if rank(K, [list(r) for r in P.rows]) == n:
            return P


def _random_hermitian(K, n, qp, rnd, rank_max=None):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        # diagonal entries must be fixed by conjugation
        rows[i][i] = rnd.choice([x for x in range(K.q) if K.pow(x, qp) == x])
        for j in range(i + 1, n):
            x = rnd.randrange(K.q)
            rows[i][j] = x
            rows[j][i] = K.pow(x, qp)
    return SesquiMatrix(K, rows, qp)


def _standard(K, n, r, qp):
    return SesquiMatrix(K, [[1 if i == j and i < r else 0 for j in range(n)] for i in range(n)], qp)


def test_normalize_examples(F4):
    I = SesquiMatrix.identity(F4, 3, 2)
    P, r = hermitian_normalize(I)
    assert P == I and r == 3
    v = [1, F4.a.code, 0]
    rank1 = SesquiMatrix(F4, [[F4.mul(F4.pow(x, 2), y) for y in v] for x in v], 2)
    P, r = hermitian_normalize(rank1)
    assert r == 1 and congruence(rank1, P) == _standard(F4, 3, 1, 2)
    with pytest.raises(ZeroMatrix):
        hermitian_normalize(SesquiMatrix(F4, [[0, 0], [0, 0]], 2))
    with pytest.raises(NotHermitian):
        hermitian_normalize(SesquiMatrix(F4, [[0, 1], [0, 0]], 2))


@pytest.mark.parametrize("q,qp", [(4, 2), (9, 3), (16, 4), (25, 5)])
def test_normalize_reaches_standard_form_and_rank_is_invariant(q, qp):
    K = field_of_order(q)
    rnd = random.Random(q)
    from frobnc.vecfield import rank
    for _ in range(25):
        n = rnd.randint(1, 4)
        M = _random_hermitian(K, n, qp, rnd)
        if M.is_zero():
            continue
        P, r = hermitian_normalize(M)
        assert rank(K, [list(x) for x in P.rows]) == n
        assert congruence(M, P) == _standard(K, n, r, qp)
        assert r == rank(K, [list(x) for x in M.rows])
        T = _random_invertible(K, n, qp, rnd)
        assert hermitian_normalize(congruence(M, T))[1] == r


def test_hermitian_hypersurface_examples(herm_cubic):
    v = is_hermitian_hypersurface(herm_cubic, 4)
    assert v and v.transform == SesquiMatrix.identity(herm_cubic.field, 3, 2) and v.rank == 3
    assert not is_hermitian_hypersurface(parse_poly("x0^3 + x0*x1*x2", herm_cubic.field, 3), 4)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_skew_form_is_hermitian_over_square_field(q):
    F = parse_poly(f"x0^{q}*x1 - x0*x1^{q}", field_of_order(q), 2)
    v = is_hermitian_hypersurface(F, q * q)
    assert v
    alpha = v.scale
    if q % 2:
        # the scaling constant is an alpha with alpha^q = -alpha
        assert alpha ** q == -alpha
