import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from frobnc.gf import field_of_order, make_field
from frobnc.mpoly import HomogPoly, monomials, parse_poly

settings.register_profile("frobnc", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("frobnc")

SMALL_ORDERS = (2, 3, 4, 5, 7, 8, 9)


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def herm_cubic(F4):
    return parse_poly("x0^3 + x1^3 + x2^3", F4, 3)


@pytest.fixture(scope="session")
def dgz():
    return parse_poly("x0^4+x1^4+x2^4+x0^2*x1^2+x0^2*x2^2+x1^2*x2^2+x0^2*x1*x2+x0*x1^2*x2+x0*x1*x2^2",
                      field_of_order(2), 3)


@st.composite
def polys(draw, orders=(2, 3, 4), max_vars=3, max_deg=3, min_deg=1, nonzero=True):
    """Random homogeneous polynomials over a small field."""
    q = draw(st.sampled_from(orders))
    K = field_of_order(q)
    nvars = draw(st.integers(1, max_vars))
    d = draw(st.integers(min_deg, max_deg))
    monos = monomials(nvars, d)
    coeffs = draw(st.lists(st.integers(0, q - 1), min_size=len(monos), max_size=len(monos)))
    if nonzero and not any(coeffs):
        coeffs[0] = 1
    return HomogPoly(K, nvars, d, dict(zip(monos, coeffs)))


def naive_eval(F, point):
    """Scalar evaluation with FieldSpec operations only (independent of the numpy path)."""
    K = F.field
    acc = 0
    for e, c in F.terms.items():
        t = c
        for x, k in zip(point, e):
            t = K.mul(t, K.pow(x, k))
        acc = K.add(acc, t)
    return acc


def naive_points(n, K):
    """Normalised points of P^n(K) as code tuples, by brute force."""
    for v in itertools.product(range(K.q), repeat=n + 1):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            yield v


def naive_count(F):
    return sum(1 for P in naive_points(F.nvars - 1, F.field) if naive_eval(F, P) == 0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for crit in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[crit])
