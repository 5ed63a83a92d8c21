"""Rational points and singular points by exhaustive enumeration."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import FieldTooLarge
from ..gf import MAX_ORDER, FieldSpec, make_field
from ..mpoly import HomogPoly, partial_derivative
from ..projgeom import ProjPoint, num_points, point_array, point_ranges
from ..vecfield import eval_poly

CHUNK = 1 << 16


def extension_field(F: HomogPoly, m: int) -> FieldSpec:
    """The field of order q^m (q = order of F's field) used for point enumeration."""
    K = F.field
    if m == 1:
        return K
    if K.q ** m > MAX_ORDER:
        raise FieldTooLarge(f"q^m = {K.q ** m} exceeds {MAX_ORDER}")
    return make_field(K.p, K.k * m)


def _zero_mask(F, X, L):
    return eval_poly(F, X, L) == 0


def _count_range(F, n, L, start, stop):
    total = 0
    for s in range(start, stop, CHUNK):
        X = point_array(n, L, s, min(s + CHUNK, stop))
        total += int(_zero_mask(F, X, L).sum())
    return total


def count_points(F: HomogPoly, m: int = 1, threads: int = 1) -> int:
    """#X(F_{q^m}) by enumeration; ``threads`` splits the point range."""
    L = extension_field(F, m)
    n = F.nvars - 1
    if threads <= 1:
        return _count_range(F, n, L, 0, num_points(n, L.q))
    ranges = point_ranges(n, L, threads)
    point_array(n, L)  # build the shared cache once
    with ThreadPoolExecutor(threads) as pool:
        parts = pool.map(lambda r: _count_range(F, n, L, *r), ranges)
    return sum(parts)


def rational_zero_array(F: HomogPoly, m: int = 1) -> np.ndarray:
    """Codes of the points of X over F_{q^m}, in canonical order."""
    L = extension_field(F, m)
    n = F.nvars - 1
    out = []
    total = num_points(n, L.q)
    for s in range(0, total, CHUNK):
        X = point_array(n, L, s, min(s + CHUNK, total))
        out.append(X[_zero_mask(F, X, L)])
    return np.concatenate(out, axis=0) if out else np.zeros((0, n + 1), dtype=np.int64)


def rational_points(F: HomogPoly, m: int = 1) -> list[ProjPoint]:
    L = extension_field(F, m)
    return [ProjPoint(L, [int(x) for x in row]) for row in rational_zero_array(F, m)]


def singular_point_array(F: HomogPoly, m: int = 1, first_only: bool = False) -> np.ndarray:
    L = extension_field(F, m)
    Z = rational_zero_array(F, m)
    if Z.shape[0] == 0:
        return Z
    mask = np.ones(Z.shape[0], dtype=bool)
    for i in range(F.nvars):
        Fi = partial_derivative(F, i)
        if Fi.is_zero():
            continue
        mask &= eval_poly(Fi, Z, L) == 0
        if not mask.any():
            break
    S = Z[mask]
    return S[:1] if first_only else S


def singular_points(F: HomogPoly, m: int = 1) -> list[ProjPoint]:
    """Points of X over F_{q^m} where every partial derivative vanishes."""
    L = extension_field(F, m)
    return [ProjPoint(L, [int(x) for x in row]) for row in singular_point_array(F, m)]


def is_space_filling(F: HomogPoly) -> bool:
    return count_points(F, 1) == num_points(F.nvars - 1, F.field.q)


@dataclass
class BoundCheck:
    name: str
    value: object
    kind: str  # "lower" or "upper"
    satisfied: bool
    hypotheses: str = ""


@dataclass
class PointCountReport:
    counts: dict
    space_filling: bool
    pointless: bool
    bounds: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "counts": {str(m): c for m, c in self.counts.items()},
            "space_filling": self.space_filling,
            "pointless": self.pointless,
            "bounds": [
                {"name": b.name, "value": str(b.value), "kind": b.kind, "satisfied": b.satisfied,
                 "hypotheses": b.hypotheses}
                for b in self.bounds
            ],
        }


def point_count_report(F: HomogPoly, extensions=(1,)) -> PointCountReport:
    """Counts over F_{q^m} for each m, with numeric comparisons against the standard bounds.

    A bound comparison is purely arithmetic: ``hypotheses`` records what the
    bound assumes, and the caller decides whether it applies.
    """
    from .bounds import bounds_calculator

    q = F.field.q
    n = F.nvars - 1
    d = F.degree
    counts = {m: count_points(F, m) for m in extensions}
    c1 = counts.get(1, count_points(F, 1))
    counts.setdefault(1, c1)
    checks = []
    if n >= 1:
        ss = bounds_calculator("serre_sorensen", n=n, d=d, q=q)
        checks.append(BoundCheck("serre_sorensen", ss, "upper", c1 <= ss, "none"))
    if n == 2 and 1 <= d <= q + 1:
        cl = bounds_calculator("curve_lower", d=d, q=q)
        checks.append(BoundCheck("curve_lower", cl, "lower", c1 >= cl,
                                 "reduced Frobenius nonclassical curve smooth at F_q-points"))
    if n == 3 and 1 <= d <= q + 1:
        sl = bounds_calculator("surface_lower", d=d, q=q)
        checks.append(BoundCheck("surface_lower", sl, "lower", c1 >= sl,
                                 "smooth Frobenius nonclassical surface"))
        hk = bounds_calculator("homma_kim_surface", d=d, q=q)
        checks.append(BoundCheck("homma_kim_surface", hk, "upper", c1 <= hk, "no F_q-linear component"))
    if F.field.k % 2 == 0 and n >= 2:
        h = bounds_calculator("heim", n=n, q=q)
        checks.append(BoundCheck("heim", h, "lower", c1 >= h, "non-trivial blocking set"))
    return PointCountReport(counts, c1 == num_points(n, q), c1 == 0, checks)
