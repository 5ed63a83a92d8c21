import itertools

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from frobnc import upoly
from frobnc.errors import NotHomogeneous, PolySyntaxError, UnknownVariable
from frobnc.gf import field_of_order
from frobnc.mpoly import (
    HomogPoly,
    binary_root_profile,
    binary_squarefree,
    euler_check,
    evaluate,
    format_poly,
    frobenius_twist,
    gradient,
    is_pth_power,
    monomials,
    parse_poly,
    partial_derivative,
    poly_divides,
    poly_power,
    read_poly_file,
    substitute_linear,
    univariate_gcd,
    write_poly_file,
)

from conftest import polys


# ------------------------------------------------------------ parsing and printing

def test_parse_examples(F4, herm_cubic):
    assert herm_cubic.degree == 3 and len(herm_cubic.terms) == 3
    F2 = field_of_order(2)
    sf = parse_poly("x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2", F2, 4)
    assert sf.nvars == 4 and sf.degree == 3
    with pytest.raises(NotHomogeneous):
        parse_poly("x0^2 + x1", F2, 2)
    with pytest.raises(UnknownVariable):
        parse_poly("x5^2", F2, 2)


def test_parse_error_reports_column():
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("x0^2 * * x1^2", field_of_order(3), 2)
    assert "column" in str(exc.value)


def test_extension_coefficients(F4):
    F = parse_poly("(a+1)*x0^2 + (a)*x1^2", F4, 2)
    assert format_poly(F) == "(a+1)*x0^2 + (a)*x1^2"


@given(polys(orders=(2, 3, 4, 8, 9), max_vars=4, max_deg=4))
def test_print_parse_round_trip(F):
    assert parse_poly(format_poly(F), F.field, F.nvars) == F


def test_file_round_trip(F4, herm_cubic):
    text = write_poly_file([herm_cubic, herm_cubic.scale(F4.a)])
    K, n, ps = read_poly_file(text)
    assert K == F4 and n == 2 and ps == [herm_cubic, herm_cubic.scale(F4.a)]


def test_file_errors_carry_line_numbers():
    with pytest.raises(PolySyntaxError) as exc:
        read_poly_file("p=3 k=1 n=1\n\nx0^2 + (x1\n")
    assert "line 3" in str(exc.value)


# ------------------------------------------------------------ derivatives and Euler

def test_partial_derivative_examples(F4, dgz):
    assert partial_derivative(parse_poly("x0^3", F4, 1), 0) == parse_poly("x0^2", F4, 1)
    F2 = field_of_order(2)
    assert partial_derivative(parse_poly("x0^2*x1", F2, 2), 0).is_zero()
    assert partial_derivative(dgz, 0) == parse_poly("x1*x2^2 + x1^2*x2", F2, 3)


def test_euler_examples(F4, herm_cubic):
    F2 = field_of_order(2)
    cub = parse_poly("x0^2*x1 + x1*x2^2 + x0*x1*x2", F2, 3)
    v = euler_check(cub)
    assert v and v.lhs == cub
    quartic = parse_poly("x0^3*x1 + x2^4 + x0*x1*x2^2", F2, 3)
    assert euler_check(quartic).lhs.is_zero()
    assert euler_check(herm_cubic).lhs == herm_cubic


@given(polys(orders=(2, 3, 4, 5, 9), max_vars=4, max_deg=5))
def test_euler_identity(F):
    assert euler_check(F).holds


def test_evaluate_examples(F4, herm_cubic, dgz):
    assert evaluate(herm_cubic, [F4.one, F4.one, F4.zero]) == F4.zero
    F2 = field_of_order(2)
    assert evaluate(dgz, [F2.one, F2.zero, F2.zero]) == F2.one
    assert evaluate(dgz, [F2.zero] * 3) == F2.zero


# ------------------------------------------------------------ substitution

def test_substitute_examples(F4, herm_cubic):
    I = [[int(i == j) for j in range(3)] for i in range(3)]
    assert substitute_linear(herm_cubic, I, 3) == herm_cubic
    proj = [[1, 0, 0], [0, 1, 0], [0, 0, 0]]
    assert substitute_linear(herm_cubic, proj, 3) == parse_poly("x0^3+x1^3", F4, 3)
    line = [[1, 0], [0, 1], [0, 0]]
    assert substitute_linear(herm_cubic, line, 2) == parse_poly("x0^3+x1^3", F4, 2)


@given(polys(orders=(2, 3, 4), max_vars=3, max_deg=3), st.data())
def test_substitute_composition(F, data):
    n = F.nvars
    q = F.field.q
    mat = st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=n, max_size=n)
    A, B = data.draw(mat), data.draw(mat)
    K = F.field
    AB = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = K.add(acc, K.mul(A[i][k], B[k][j]))
            AB[i][j] = acc
    lhs = substitute_linear(substitute_linear(F, A, n), B, n)
    assert lhs == substitute_linear(F, AB, n)


# ------------------------------------------------------------ division and powers

def test_divides_examples(herm_cubic, F4):
    x0x1 = parse_poly("x0 + x1", F4, 3)
    ok, Q = poly_divides(herm_cubic, herm_cubic * x0x1)
    assert ok and Q == x0x1
    assert not poly_divides(parse_poly("x0", F4, 2), parse_poly("x1^2", F4, 2))


def _all_forms(K, nvars, d):
    monos = monomials(nvars, d)
    for coeffs in itertools.product(range(K.q), repeat=len(monos)):
        yield HomogPoly(K, nvars, d, dict(zip(monos, coeffs)))


@given(polys(orders=(2,), max_vars=3, max_deg=2), polys(orders=(2,), max_vars=3, max_deg=4))
def test_divides_against_bruteforce(F, G):
    if F.nvars != G.nvars or F.field != G.field:
        G = HomogPoly(F.field, F.nvars, G.degree, {e[:F.nvars] + (0,) * (F.nvars - len(e[:F.nvars])): c
                                                   for e, c in G.terms.items() if sum(e[:F.nvars]) == G.degree})
    v = poly_divides(F, G)
    if G.degree < F.degree:
        assert bool(v) == G.is_zero()
        return
    hits = [Q for Q in _all_forms(F.field, F.nvars, G.degree - F.degree) if F * Q == G]
    assert bool(v) == bool(hits)
    if v:
        assert F * v.quotient == G


def test_pth_power_examples(F4):
    F2 = field_of_order(2)
    v = is_pth_power(parse_poly("x0^2 + x1^2", F2, 2))
    assert v and v.root == parse_poly("x0 + x1", F2, 2)
    assert not is_pth_power(parse_poly("x0^2*x1", F2, 2))
    assert not is_pth_power(parse_poly("(a)*x0^3", F4, 1))


@given(polys(orders=(2, 3, 4), max_vars=4, max_deg=4))
def test_pth_power_iff_gradient_vanishes(F):
    assert bool(is_pth_power(F)) == all(g.is_zero() for g in gradient(F))


def test_power_and_twist(F4):
    F2 = field_of_order(2)
    assert poly_power(parse_poly("x0 + x1", F2, 2), 2) == parse_poly("x0^2 + x1^2", F2, 2)
    F = parse_poly("x0*x1 + x1^2", F4, 2)
    assert poly_power(F, 1) == F
    assert frobenius_twist(parse_poly("(a)*x0", F4, 1), 1) == parse_poly("(a+1)*x0^2", F4, 1)


@given(polys(orders=(2, 3, 4), max_vars=3, max_deg=3), st.integers(0, 4))
def test_power_is_repeated_product(F, e):
    P = HomogPoly(F.field, F.nvars, 0, {(0,) * F.nvars: 1})
    for _ in range(e):
        P = P * F
    assert poly_power(F, e) == P


# ------------------------------------------------------------ binary forms and univariate helpers

def test_binary_squarefree_examples(F4):
    F2 = field_of_order(2)
    assert binary_squarefree(parse_poly("x0^3 + x1^3", F4, 2))
    assert not binary_squarefree(parse_poly("x0^2*x1", F2, 2))
    assert not binary_squarefree(parse_poly("x0^2 + x1^2", F2, 2))


def test_root_profile_hermitian_section(F4):
    assert binary_root_profile(parse_poly("x0^3 + x1^3", F4, 2)) == [(1, 1), (1, 1), (1, 1)]


def test_gcd_examples(F4):
    F2 = field_of_order(2)
    g = univariate_gcd([1, 0, 1], [1, 1], F2)
    assert [c.code for c in g] == [1, 1]
    g = univariate_gcd([1, 0, 0, 1], [0, 0, 1], F4)
    assert [c.code for c in g] == [1]
    f = [F4.a, F4.one, F4.a + 1]
    g = univariate_gcd(f, [])
    assert g[-1] == F4.one and len(g) == 3


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@given(data=st.data())
def test_gcd_and_squarefree_against_sympy(p, data):
    K = field_of_order(p)
    coeffs = st.lists(st.integers(0, p - 1), min_size=1, max_size=7)
    f, g = data.draw(coeffs), data.draw(coeffs)
    assume(any(f) or any(g))
    x = sympy.symbols("x")
    sf = sympy.Poly(list(reversed(f)), x, modulus=p)
    sg = sympy.Poly(list(reversed(g)), x, modulus=p)
    want = sympy.gcd(sf, sg)
    got = upoly.gcd(K, upoly.trim(list(f)), upoly.trim(list(g)))
    if want.is_zero:
        assert got == []
    else:
        want = want.monic()
        assert got == [int(c) % p for c in reversed(want.all_coeffs())]
    ft = upoly.trim(list(f))
    if len(ft) >= 2:
        binary = HomogPoly(K, 2, len(ft) - 1, {(i, len(ft) - 1 - i): c for i, c in enumerate(ft)})
        # factor_list, since Poly.is_sqf misreports inseparable cases such as x^2 mod 2
        _, factors = sympy.Poly(list(reversed(ft)), x, modulus=p).factor_list()
        expect = all(mult == 1 for _, mult in factors)
        assert binary_squarefree(binary) == expect
