"""Line incidence: blocking sets, transverse lines and intersection profiles."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import isqrt

import numpy as np

from ..errors import LineContained, NotAPlaneCurve
from ..mpoly import HomogPoly, binary_root_profile, binary_squarefree, substitute_linear
from ..projgeom import ProjLine, enumerate_lines, num_points, point_array
from ..vecfield import eval_poly, vec_field
from .bounds import bounds_calculator
from .points import rational_zero_array


def restrict(F: HomogPoly, L: ProjLine) -> HomogPoly:
    """The binary form F(s*r0 + t*r1) for the line's basis rows."""
    return substitute_linear(F, L.parametrization(), 2)


def fq_line_intersection_profile(F: HomogPoly, L: ProjLine) -> list[tuple[int, int]]:
    """Sorted (residue degree over F_q, multiplicity) for each point of X on L."""
    f = restrict(F, L)
    if f.is_zero():
        raise LineContained(f"line {L} lies on the hypersurface")
    return binary_root_profile(f)


def _line_hits(F: HomogPoly, lines) -> np.ndarray:
    """Boolean array: does line i contain an F_q-point of X."""
    if not lines:
        return np.zeros(0, dtype=bool)
    pts = np.concatenate([L.point_codes() for L in lines], axis=0)
    vals = eval_poly(F, pts).reshape(len(lines), -1)
    return (vals == 0).any(axis=1)


@dataclass
class BlockingReport:
    blocking: bool
    nontrivial: bool
    point_count: int
    lines_checked: int
    heim_value: int | None
    heim_satisfied: bool | None
    missed_line: str | None = None
    full_hyperplane: tuple | None = None

    def to_json(self):
        return {
            "blocking": self.blocking,
            "nontrivial": self.nontrivial,
            "point_count": self.point_count,
            "lines_checked": self.lines_checked,
            "heim_value": self.heim_value,
            "heim_satisfied": self.heim_satisfied,
            "missed_line": self.missed_line,
            "full_hyperplane": None if self.full_hyperplane is None else list(self.full_hyperplane),
        }


def _full_hyperplane(F: HomogPoly, Z: np.ndarray):
    """First F_q-hyperplane (dual codes) all of whose F_q-points lie on X, else None."""
    K = F.field
    n = F.nvars - 1
    need = num_points(n - 1, K.q)
    if Z.shape[0] < need:
        return None
    V = vec_field(K)
    for h in point_array(n, K):
        acc = np.zeros(Z.shape[0], dtype=np.int64)
        for i in range(n + 1):
            if h[i]:
                acc = V.add(acc, V.mul(int(h[i]), Z[:, i]))
        if int((acc == 0).sum()) == need:
            return tuple(int(x) for x in h)
    return None


def blocking_verdict(F: HomogPoly) -> BlockingReport:
    """Does X(F_q) meet every F_q-line, and does it avoid containing a whole F_q-hyperplane."""
    K = F.field
    q = K.q
    n = F.nvars - 1
    Z = rational_zero_array(F)
    count = int(Z.shape[0])
    if n >= 2:
        lines = enumerate_lines(n, K)
        hits = _line_hits(F, lines)
        blocking = bool(hits.all())
        missed = None if blocking else str(lines[int(np.argmin(hits))])
        checked = len(lines)
    else:
        # P^1 is its own unique line
        blocking = count > 0
        missed = None if blocking else "P^1"
        checked = 1
    full = _full_hyperplane(F, Z) if n >= 1 else None
    heim_value = heim_ok = None
    r = isqrt(q)
    if r * r == q and n >= 2:
        heim_value = bounds_calculator("heim", n=n, q=q)
        heim_ok = count >= heim_value
    return BlockingReport(blocking, full is None, count, checked, heim_value, heim_ok, missed, full)


@dataclass
class LineRecord:
    line: ProjLine
    kind: str  # "contained", "transverse" or "tangent_or_singular"
    profile: list | None = None

    def to_json(self):
        return {"line": str(self.line), "kind": self.kind, "profile": self.profile}


@dataclass
class LineIncidenceReport:
    records: list
    contained: int
    transverse: int
    tangent_or_singular: int
    total: int
    bounds: list = dc_field(default_factory=list)

    @property
    def non_transverse(self) -> int:
        return self.contained + self.tangent_or_singular

    def transverse_lines(self):
        return [r for r in self.records if r.kind == "transverse"]

    def to_json(self, lines: bool = False):
        out = {
            "contained": self.contained,
            "transverse": self.transverse,
            "tangent_or_singular": self.tangent_or_singular,
            "non_transverse": self.non_transverse,
            "total": self.total,
            "bounds": [dict(b) for b in self.bounds],
        }
        if lines:
            out["lines"] = [r.to_json() for r in self.records]
        return out


def line_incidence(C: HomogPoly, assume_irreducible: bool = False, assume_reduced: bool = False,
                   profiles: bool = True) -> LineIncidenceReport:
    """Classify every F_q-line against the plane curve C.

    Both non-transverse bounds are always evaluated; ``applies`` records
    whether the caller asserted the hypothesis the bound needs.
    """
    if C.nvars != 3:
        raise NotAPlaneCurve(f"expected a plane curve, got {C.nvars} variables")
    K = C.field
    q = K.q
    d = C.degree
    records = []
    counts = {"contained": 0, "transverse": 0, "tangent_or_singular": 0}
    for L in enumerate_lines(2, K):
        f = restrict(C, L)
        if f.is_zero():
            kind, prof = "contained", None
        else:
            kind = "transverse" if binary_squarefree(f) else "tangent_or_singular"
            prof = binary_root_profile(f) if profiles else None
        counts[kind] += 1
        records.append(LineRecord(L, kind, prof))
    rep = LineIncidenceReport(records, counts["contained"], counts["transverse"],
                              counts["tangent_or_singular"], len(records))
    if d >= 1:
        for name, applies in (("non_transverse_irreducible", assume_irreducible),
                              ("non_transverse_reduced", assume_reduced)):
            value = bounds_calculator(name, d=d, q=q)
            rep.bounds.append({
                "name": name,
                "value": str(value),
                "applies": applies,
                "satisfied": rep.non_transverse <= value,
            })
    return rep
