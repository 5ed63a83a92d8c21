import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobnc.errors import DimensionMismatch, EqualPoints, PointNotOnHypersurface, SingularPoint
from frobnc.frobcore import is_frobenius_nonclassical
from frobnc.gf import field_of_order
from frobnc.mpoly import change_field, evaluate_codes, parse_poly
from frobnc.projgeom import (
    Hyperplane,
    ProjLine,
    ProjPoint,
    enumerate_lines,
    enumerate_points,
    frobenius_point,
    gaussian_binomial,
    line_through,
    lines_through_point,
    num_points,
    parse_point,
    point_array,
    point_on_hyperplane,
    point_ranges,
    tangent_hyperplane,
)

from conftest import naive_points


# ------------------------------------------------------------ points

def test_enumerate_points_examples(F4):
    F2 = field_of_order(2)
    assert [P.coords for P in enumerate_points(1, F2)] == [(1, 0), (0, 1), (1, 1)]
    assert len(enumerate_points(3, F2)) == 15
    assert len(enumerate_points(2, F4)) == 21


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_point_enumeration_complete_and_normalised(n, q):
    K = field_of_order(q)
    X = point_array(n, K)
    assert X.shape[0] == num_points(n, q) == (q ** (n + 1) - 1) // (q - 1)
    rows = {tuple(int(x) for x in r) for r in X}
    assert len(rows) == X.shape[0]
    if q ** (n + 1) <= 5000:
        assert rows == set(naive_points(n, K))


def test_point_ranges_partition_enumeration():
    K = field_of_order(3)
    whole = [P.coords for P in enumerate_points(3, K)]
    parts = []
    for a, b in point_ranges(3, K, 7):
        parts.extend(P.coords for P in enumerate_points(3, K, a, b))
    assert parts == whole


def test_normalisation_and_negative_codes():
    F3 = field_of_order(3)
    assert ProjPoint(F3, [0, 2, 1]).coords == (0, 1, 2)
    assert ProjPoint(F3, [1, -1]) == ProjPoint(F3, [1, 2])
    with pytest.raises(ValueError):
        ProjPoint(F3, [0, 0])


def test_parse_point_round_trip(F4):
    P = parse_point("(1 : a : 0)", F4)
    assert P.coords == (1, F4.a.code, 0)
    assert parse_point(str(P), F4) == P


# ------------------------------------------------------------ lines

def test_enumerate_lines_examples(F4):
    F2 = field_of_order(2)
    assert len(enumerate_lines(2, F2)) == 7
    assert len(enumerate_lines(2, F4)) == 21
    assert len(enumerate_lines(3, F2)) == 35 == gaussian_binomial(4, 2, 2)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_lines_have_q_plus_one_points(n, q):
    K = field_of_order(q)
    lines = enumerate_lines(n, K)
    assert len(lines) == len(set(lines)) == gaussian_binomial(n + 1, 2, q)
    pts = enumerate_points(n, K)
    incidence = {P: 0 for P in pts}
    for L in lines:
        on = L.points()
        assert len(on) == q + 1
        assert sorted(P.coords for P in on) == sorted(P.coords for P in pts if L.contains(P))
        for P in on:
            incidence[P] += 1
    # every point lies on as many lines as there are directions through it
    assert set(incidence.values()) == {num_points(n - 1, q)}


def test_line_through_and_incidence(F4):
    F2 = field_of_order(2)
    L = line_through(ProjPoint(F2, [1, 0, 0]), ProjPoint(F2, [0, 1, 0]))
    assert L == ProjLine(F2, ([1, 0, 0], [0, 1, 0]))
    assert L.rows == ((1, 0, 0), (0, 1, 0))
    assert point_on_hyperplane(ProjPoint(F2, [1, 1, 0]), Hyperplane(F2, [1, 1, 0]))
    assert len(lines_through_point(ProjPoint(F4, [1, 0, 0]))) == 5
    with pytest.raises(EqualPoints):
        line_through(ProjPoint(F2, [1, 1, 0]), ProjPoint(F2, [1, 1, 0]))


@given(st.sampled_from([2, 3, 4]), st.data())
def test_line_through_is_symmetric_and_canonical(q, data):
    K = field_of_order(q)
    pts = enumerate_points(2, K)
    P, Q = data.draw(st.lists(st.sampled_from(pts), min_size=2, max_size=2, unique=True))
    L = line_through(P, Q)
    assert L == line_through(Q, P)
    assert L.contains(P) and L.contains(Q)
    R = data.draw(st.sampled_from(L.points()))
    if R != P:
        assert line_through(P, R) == L


# ------------------------------------------------------------ Frobenius on points

def test_frobenius_point_examples(F4):
    F2 = field_of_order(2)
    P = ProjPoint(F2, [1, 1, 0])
    assert frobenius_point(P, 2) == P
    Q = ProjPoint(F4, [1, F4.a.code])
    assert frobenius_point(Q, 2) == ProjPoint(F4, [1, (F4.a + 1).code])
    assert frobenius_point(frobenius_point(Q, 2), 2) == Q


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)])
@pytest.mark.parametrize("n", [1, 2])
def test_frobenius_fixes_exactly_rational_points(n, q, m):
    L = field_of_order(q ** m)
    base = {x for x in range(L.q) if L.pow(x, q) == x}
    assert len(base) == q
    for P in enumerate_points(n, L):
        rational = all(c in base for c in P.coords)
        assert (frobenius_point(P, q) == P) == rational == P.is_rational(q)


# ------------------------------------------------------------ tangent hyperplanes

def test_tangent_hyperplane_examples(F4, herm_cubic):
    assert tangent_hyperplane(herm_cubic, ProjPoint(F4, [1, 1, 0])) == Hyperplane(F4, [1, 1, 0])
    F3 = field_of_order(3)
    conic = parse_poly("x0*x2 - x1^2", F3, 3)
    assert tangent_hyperplane(conic, ProjPoint(F3, [1, 0, 0])) == Hyperplane(F3, [0, 0, 1])
    with pytest.raises(PointNotOnHypersurface):
        tangent_hyperplane(conic, ProjPoint(F3, [1, 0, 1]))
    cusp = parse_poly("x1^2*x2 - x0^3", F3, 3)
    with pytest.raises(SingularPoint):
        tangent_hyperplane(cusp, ProjPoint(F3, [0, 0, 1]))


def _smooth_points(F):
    for P in enumerate_points(F.nvars - 1, F.field):
        if evaluate_codes(F, P.coords, F.field) == 0:
            try:
                yield P, tangent_hyperplane(F, P)
            except SingularPoint:
                pass


@pytest.mark.parametrize("text,q", [
    ("x0^3 + x1^3 + x2^3", 4),
    ("x0^2 + x1*x2", 3),
    ("x0^4 + x0*x1*x2^2 + x1^3*x2", 5),
    ("x0^2*x1 + x1^2*x2 + x2^2*x0", 7),
])
def test_tangent_contains_point_when_degree_prime_to_p(text, q):
    F = parse_poly(text, field_of_order(q), 3)
    assert F.degree % F.field.p
    for P, H in _smooth_points(F):
        assert H.contains(P)


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("text,q,n", [
    ("x0^3 + x1^3 + x2^3", 4, 3),
    ("x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2", 2, 4),
    ("x0^4+x1^4+x2^4+x0^2*x1^2+x0^2*x2^2+x1^2*x2^2+x0^2*x1*x2+x0*x1^2*x2+x0*x1*x2^2", 2, 3),
])
def test_tangent_contains_frobenius_image_on_fn_hypersurface(text, q, n, m):
    F = parse_poly(text, field_of_order(q), n)
    assert is_frobenius_nonclassical(F, q).nonclassical
    FL = change_field(F, field_of_order(q ** m))
    checked = 0
    for P, H in _smooth_points(FL):
        assert H.contains(frobenius_point(P, q))
        checked += 1
    # the quartic has no F_2-points, every other case has smooth points to check
    assert checked or (m == 1 and F.degree == 4)


def test_hyperplane_normalised_and_dimension_checked():
    F3 = field_of_order(3)
    assert Hyperplane(F3, [0, 2, 2]) == Hyperplane(F3, [0, 1, 1])
    with pytest.raises(DimensionMismatch):
        point_on_hyperplane(ProjPoint(F3, [1, 0]), Hyperplane(F3, [1, 0, 0]))


def test_lines_through_point_count_in_higher_dimension():
    K = field_of_order(3)
    P = ProjPoint(K, [1, 2, 0, 1])
    lines = lines_through_point(P)
    assert len(lines) == num_points(2, 3)
    assert all(L.contains(P) for L in lines)
    covered = set(itertools.chain.from_iterable(L.points() for L in lines))
    assert len(covered) == num_points(3, 3)
