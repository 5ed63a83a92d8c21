"""Closed-form degree and point-count bounds, evaluated exactly."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import InvalidParameters
from ..gf import prime_power


def _need(params, *names):
    missing = [k for k in names if k not in params]
    if missing:
        raise InvalidParameters(f"missing parameters: {', '.join(missing)}")
    vals = []
    for k in names:
        v = params[k]
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidParameters(f"{k} must be an integer, got {v!r}")
        vals.append(v)
    return vals


def _check_q(q):
    try:
        return prime_power(q)
    except Exception:
        raise InvalidParameters(f"q = {q} is not a prime power") from None


def _sqrt_q(q):
    r = isqrt(q)
    if r * r != q:
        raise InvalidParameters(f"q = {q} is not a square")
    return r


def _positive(**kw):
    for k, v in kw.items():
        if v < 1:
            raise InvalidParameters(f"{k} must be >= 1, got {v}")


def serre_sorensen(n, d, q):
    """Upper bound d q^{n-1} + q^{n-2} + ... + q + 1 on #X(F_q)."""
    return d * q ** (n - 1) + sum(q ** i for i in range(n - 1))


def curve_lower(d, q):
    """Lower bound d(q-d+2) for reduced Frobenius nonclassical plane curves."""
    return d * (q - d + 2)


def surface_lower(d, q):
    t = d * (q - d + 2)
    return Fraction((q ** 3 + q ** 2 + q + 1) * t, (q ** 2 + q) + t)


def homma_kim_surface(d, q):
    """Upper bound (d-1)q^2 + dq + 1 for surfaces with no F_q-linear component."""
    return (d - 1) * q ** 2 + d * q + 1


def heim(n, q):
    """Lower bound (q^n-1)/(q-1) + sqrt(q) q^{n-2} on non-trivial blocking sets."""
    r = _sqrt_q(q)
    return (q ** n - 1) // (q - 1) + r * q ** (n - 2)


def good_hyperplanes(n, d, q):
    """Hyperplanes cutting a section that is proper and smooth at F_q-points."""
    return q ** (n - 1) * (q - d + 1)


def non_transverse_irreducible(d, q):
    return Fraction((d - 1) * (d - 2), 2) + d * (d - 1) * q + 1


def non_transverse_reduced(d, q):
    return Fraction(d * d, 2) + q * d * d - q * d + Fraction(d, 2)


def degree_corridor(q):
    """(lowest, highest) possible degree >= 2 of a smooth Frobenius nonclassical hypersurface."""
    p, _ = _check_q(q)
    r = isqrt(q)
    low = p + 1
    if r * r == q:
        low = max(low, r + 1)
    high = q + 2 if p == 2 else q + 1
    return low, high


_KINDS = {
    "serre_sorensen": (serre_sorensen, ("n", "d", "q")),
    "curve_lower": (curve_lower, ("d", "q")),
    "surface_lower": (surface_lower, ("d", "q")),
    "homma_kim_surface": (homma_kim_surface, ("d", "q")),
    "heim": (heim, ("n", "q")),
    "good_hyperplanes": (good_hyperplanes, ("n", "d", "q")),
    "non_transverse_irreducible": (non_transverse_irreducible, ("d", "q")),
    "non_transverse_reduced": (non_transverse_reduced, ("d", "q")),
    "degree_corridor": (degree_corridor, ("q",)),
}

BOUND_KINDS = tuple(_KINDS)


def bounds_calculator(kind: str, **params):
    """Evaluate the named bound; fractions stay exact, integers come back as int."""
    if kind not in _KINDS:
        raise InvalidParameters(f"unknown bound kind {kind!r}; expected one of {', '.join(_KINDS)}")
    fn, names = _KINDS[kind]
    vals = dict(zip(names, _need(params, *names)))
    _check_q(vals["q"])
    _positive(**{k: v for k, v in vals.items() if k != "q"})
    if kind in ("curve_lower", "surface_lower", "good_hyperplanes") and vals["d"] > vals["q"] + 1:
        raise InvalidParameters(f"{kind} needs d <= q+1")
    out = fn(**vals)
    if isinstance(out, Fraction) and out.denominator == 1:
        return int(out)
    return out
