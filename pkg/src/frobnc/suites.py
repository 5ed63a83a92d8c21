"""Verification suites: each one runs an end-to-end check of a stated result at small q."""

from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import UnknownSuite
from .families import gen_char2_even_builtin, gen_hermitian, gen_q_plus_2, gen_skew_form, gen_space_filling, standard_symplectic
from .frobcore import (
    SesquiMatrix,
    compute_F10,
    decomposition_forms,
    hermitian_decompose,
    hermitian_tests,
    is_frobenius_nonclassical,
    is_hermitian_hypersurface,
)
from .gf import extension_of, field_of_order
from .mpoly import HomogPoly, change_field, format_poly, is_pth_power, poly_power
from .projgeom import enumerate_lines


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"label": self.label, "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    criterion: int
    title: str
    checks: list = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.criterion:2d} {self.suite}: {self.title} ({self.seconds:.1f}s)"

    def to_json(self):
        return {
            "suite": self.suite,
            "criterion": self.criterion,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [c.to_json() for c in self.checks],
        }


def _check(out, label, ok, detail=""):
    out.append(Check(label, bool(ok), str(detail)))
    return bool(ok)


# ------------------------------------------------------------ suites

def suite_hermitian_f10():
    out = []
    for q in (4, 9, 16):
        K = field_of_order(q)
        s = K.sqrt_q
        for n in (1, 2, 3):
            F = gen_hermitian(n, n, K).polynomial
            _check(out, f"q={q} n={n}: F_1,0 = F^{s}", compute_F10(F, q) == poly_power(F, s))
            cl = is_frobenius_nonclassical(F, q)
            _check(out, f"q={q} n={n}: scalar_power(1, {s})",
                   cl.nonclassical and cl.kind == "scalar_power" and cl.c.code == 1 and cl.e == s,
                   f"kind={cl.kind} c={cl.c} e={cl.e}")
    return out


def suite_space_filling():
    from .analysis.points import count_points
    from .analysis.smooth import smoothness

    out = []
    for q in (2, 3, 4):
        F = gen_space_filling(q, 3).polynomial
        _check(out, f"q={q}: F_1,0 = 0", compute_F10(F, q).is_zero())
        v = smoothness(F, "certified")
        _check(out, f"q={q}: certified smooth", v.smooth and v.certified, v.method)
        c = count_points(F)
        want = (q ** 4 - 1) // (q - 1)
        _check(out, f"q={q}: #X(F_q) = {want}", c == want, c)
    return out


def suite_q_plus_2():
    from .analysis.points import count_points
    from .analysis.smooth import smoothness
    from .analysis.structure import separated_variables_detect

    out = []
    for name in ("dgz", "ex47_f4", "ex47_f8"):
        inst = gen_q_plus_2(None, builtin=name)
        F, q = inst.polynomial, inst.q
        _check(out, f"{name}: F_1,0 = 0", compute_F10(F, q).is_zero())
        v = smoothness(F, "certified")
        _check(out, f"{name}: certified smooth", v.smooth and v.certified, v.method)
        _check(out, f"{name}: no F_{q}-points", count_points(F) == 0)
        _check(out, f"{name}: partials x_j x_k^q - x_j^q x_k (cyclic)", inst.check_property(_prop("q_plus_2_partials")))
        _check(out, f"{name}: no separated variables", separated_variables_detect(F) is None)
    return out


def _prop(tag, arg=None):
    from .families import Property

    return Property(tag, arg)


def _hermitian_cubic():
    return gen_hermitian(2, 2, field_of_order(4)).polynomial


def suite_curve_count():
    from .analysis.bounds import bounds_calculator
    from .analysis.points import count_points

    out = []
    F = _hermitian_cubic()
    c = count_points(F)
    b = bounds_calculator("curve_lower", d=3, q=4)
    _check(out, "#C(F_4) = 9", c == 9, c)
    _check(out, "d(q-d+2) = 9 and the bound holds with equality", b == 9 and c == b, b)
    return out


def suite_blocking():
    from .analysis.lines import blocking_verdict

    out = []
    rep = blocking_verdict(_hermitian_cubic())
    _check(out, "all 21 F_4-lines checked", rep.lines_checked == 21, rep.lines_checked)
    _check(out, "blocking set", rep.blocking, rep.missed_line or "")
    _check(out, "nontrivial (contains no full F_4-line)", rep.nontrivial)
    _check(out, "9 >= heim value 7", rep.point_count == 9 and rep.heim_value == 7 and rep.heim_satisfied,
           f"{rep.point_count} vs {rep.heim_value}")
    return out


@functools.lru_cache(maxsize=None)
def _plane_census(q, d, filters, shards=1):
    from .analysis.census import census, merge_records

    K = field_of_order(q)
    parts = [census(K, 2, d, filters, shard=(i, shards)) for i in range(shards)]
    return merge_records(*[p.records for p in parts]), parts


def suite_degree_corridor_q2():
    out = []
    recs, _ = _plane_census(2, 2, ("fn", "nonhyperplane", "smooth_at_rational"))
    _check(out, "d=2: no FN conic smooth at F_2-points", not recs, len(recs))
    recs, _ = _plane_census(2, 3, ("fn", "smooth_at_rational"))
    _check(out, "d=3: FN cubics smooth at F_2-points counted", True, len(recs))
    recs, _ = _plane_census(2, 4, ("fn", "smooth"))
    _check(out, "d=4: smooth FN hits exist", len(recs) > 0, len(recs))
    bad = [r.poly for r in recs if r.matches_normal_form != "q_plus_2"]
    _check(out, "d=4: every hit matches the d = q+2 normal form", not bad, "; ".join(bad[:3]))
    recs, _ = _plane_census(2, 5, ("fn", "smooth"))
    _check(out, "d=5: no smooth FN hits (d <= q+2)", not recs, len(recs))
    return out


def suite_degree_corridor_q3():
    from .analysis.census import CensusSpace

    out = []
    recs, _ = _plane_census(3, 3, ("fn", "nonhyperplane", "smooth_at_rational"))
    _check(out, "d=3: no FN cubic smooth at F_3-points (d >= p+1 = 4)", not recs, len(recs))
    recs, parts = _plane_census(3, 4, ("fn",), shards=4)
    _check(out, "d=4: census run in 4 shards", len(parts) == 4)
    _check(out, "d=4: FN forms found", len(recs) > 0, len(recs))
    K = field_of_order(3)
    space = CensusSpace(K, 2, 4)
    skew = gen_skew_form(standard_symplectic(2, K), K).polynomial
    skew = HomogPoly(K, 3, 4, {e + (0,): c for e, c in skew.terms.items()})
    idx = space.index_of([skew.terms.get(e, 0) for e in space.monos])
    hit = [r for r in recs if r.index == idx]
    _check(out, f"d=4: {format_poly(skew)} is a hit classified FN", hit and hit[0].fn, idx)
    skew_hits = sum(1 for r in recs if _is_skew_frobenius_form(space.poly(r.coefficients), 3))
    _check(out, "d=4: every skew Frobenius form in the space is a hit", skew_hits == _count_skew_forms(K, 3),
           f"{skew_hits} skew-form hits")
    return out


def _is_skew_frobenius_form(F, q):
    from .frobcore import as_frobenius_form

    M = as_frobenius_form(F, q)
    if M is None:
        return False
    K = F.field
    n = M.size
    return all(M.rows[i][j] == K.neg(M.rows[j][i]) for i in range(n) for j in range(n))


def _count_skew_forms(K, nvars):
    """Nonzero skew matrices with zero diagonal, up to scalars; distinct ones give distinct forms."""
    pairs = nvars * (nvars - 1) // 2
    return (K.q ** pairs - 1) // (K.q - 1)


def suite_hermitian_decomposition():
    out = []
    K = field_of_order(9)
    bad = []
    count = 0
    for entries in itertools.product(range(9), repeat=4):
        M = SesquiMatrix(K, [entries[:2], entries[2:]], 3)
        M1, M2 = hermitian_decompose(M)
        G, F1, F2 = decomposition_forms(M)
        ok = (hermitian_tests(M1)["is_hermitian"] and hermitian_tests(M2)["is_skew_hermitian"]
              and M1 + M2 == M and G == poly_power(F1, 3) - poly_power(F2, 3))
        count += 1
        if not ok:
            bad.append(entries)
    _check(out, "all 6561 2x2 matrices over F_9", count == 6561, count)
    _check(out, "M1 Hermitian, M2 skew-Hermitian, M = M1 + M2, G = F1^3 - F2^3", not bad, bad[:3])
    return out


def suite_hermitian_surface():
    from .analysis.bounds import bounds_calculator
    from .analysis.points import count_points
    from .analysis.smooth import smoothness

    out = []
    F = gen_hermitian(3, 3, field_of_order(4)).polynomial
    v = smoothness(F, "certified")
    _check(out, "certified smooth", v.smooth and v.certified, v.method)
    _check(out, "Frobenius nonclassical over F_4", is_frobenius_nonclassical(F, 4).nonclassical)
    c = count_points(F)
    _check(out, "#X(F_4) = 45", c == 45, c)
    b = bounds_calculator("surface_lower", d=3, q=4)
    _check(out, "45 >= 765/29", b == Fraction(765, 29) and c >= b, b)
    return out


def suite_transversality():
    from .analysis.lines import line_incidence

    out = []
    rep = line_incidence(_hermitian_cubic(), assume_irreducible=True, assume_reduced=True)
    _check(out, "21 lines classified", rep.total == 21 == rep.contained + rep.transverse + rep.tangent_or_singular)
    _check(out, "a transverse F_4-line exists", rep.transverse > 0, rep.transverse)
    irrational = [str(r.line) for r in rep.transverse_lines() if any(deg != 1 for deg, _ in r.profile)]
    _check(out, "transverse lines meet C in F_4-points only", not irrational, irrational[:3])
    for b in rep.bounds:
        _check(out, f"non-transverse count {rep.non_transverse} <= {b['name']} = {b['value']}", b["satisfied"])
    return out


def suite_multi_frobenius():
    out = []
    for q in (2, 3):
        K = field_of_order(q)
        for n in (1, 3):
            F = gen_skew_form(standard_symplectic(n + 1, K), K).polynomial
            tag = f"q={q} n={n}"
            _check(out, f"{tag}: FN over F_{q}", is_frobenius_nonclassical(F, q).nonclassical)
            L = extension_of(K, 2)
            G = change_field(F, L)
            _check(out, f"{tag}: FN over F_{q * q}", is_frobenius_nonclassical(G, q * q).nonclassical)
            _check(out, f"{tag}: F_1,0 over F_{q * q} = -F^q", compute_F10(G, q * q) == -poly_power(G, q))
            alpha = next(a for a in range(1, L.q) if L.pow(a, q) == L.neg(a))
            aG = G.scale(L.element(alpha))
            v = is_hermitian_hypersurface(aG, q * q)
            _check(out, f"{tag}: alpha*F Hermitian over F_{q * q} (alpha = {L.format_code(alpha)})", v.is_hermitian)
    return out


def suite_separated_variables():
    from .analysis.structure import binomial_gap_check

    out = []
    for q, ds in ((2, (3, 4, 5)), (4, (3,))):
        for d in ds:
            recs, _ = _plane_census(q, d, ("fn", "smooth"))
            sep = [r for r in recs if r.separated_variables]
            p = field_of_order(q).p
            _check(out, f"q={q} d={d}: {len(sep)} separated smooth FN hits, all with d = 1 mod p",
                   all(r.d % p == 1 for r in sep), f"{len(recs)} hits")
    rep = binomial_gap_check((2, 3), 4, 8)
    _check(out, "binomial products force d | m (q in {2,3}, d <= 4, m <= 8)", not rep.violations,
           f"{rep.cases} cases, {rep.solutions} solutions, {len(rep.violations)} violations")
    return out


def _incidence_instances():
    """FN plane curves over F_q with q <= 4 and p not dividing d, from the families and two censuses."""
    from .analysis.census import census

    items = []
    K4 = field_of_order(4)
    for r in (0, 1, 2):
        items.append((f"hermitian n=2 r={r}", gen_hermitian(2, r, K4).polynomial, 4))
    ex = gen_char2_even_builtin("ex46")
    items.append(("char2-even ex46", ex.polynomial, ex.q))
    for q, d in ((2, 3), (4, 3)):
        res = census(field_of_order(q), 2, d, ("fn", "nonhyperplane"))
        for rec in res.records:
            items.append((f"census q={q} d={d} #{rec.index}", _census_poly(res, rec), q))
    return [(name, F, q) for name, F, q in items
            if F.degree % F.field.p and is_frobenius_nonclassical(F, q).nonclassical]


def _census_poly(res, rec):
    from .analysis.census import CensusSpace

    return CensusSpace(res.field, res.n, res.d).poly(rec.coefficients)


def suite_incidence():
    from .analysis.lines import restrict
    from .mpoly import binary_root_profile

    out = []
    instances = _incidence_instances()
    no_point, bad_mult = [], []
    lines_seen = pth = 0
    for name, F, q in instances:
        for L in enumerate_lines(2, F.field):
            f = restrict(F, L)
            if f.is_zero():
                continue
            lines_seen += 1
            prof = binary_root_profile(f)
            p = F.field.p
            if any(deg > 1 and mult % p for deg, mult in prof):
                bad_mult.append(f"{name} on {L}")
            if is_pth_power(f).is_power:
                pth += 1
            elif not any(deg == 1 for deg, _ in prof):
                no_point.append(f"{name} on {L}")
    _check(out, f"{len(instances)} FN instances, {lines_seen} non-contained lines", len(instances) > 0 and lines_seen > 0)
    _check(out, "every non-p-th-power intersection has an F_q-point", not no_point,
           f"{pth} restrictions are p-th powers; " + "; ".join(no_point[:3]))
    _check(out, "p divides the multiplicity at every irrational point", not bad_mult, "; ".join(bad_mult[:3]))
    return out


SUITES = {
    "hermitian-f10": (1, "Hermitian F_1,0 = F^sqrt(q) for q in {4,9,16}, n in {1,2,3}", suite_hermitian_f10),
    "space-filling": (2, "space-filling skew forms, q in {2,3,4}, n = 3", suite_space_filling),
    "q-plus-2": (3, "degree q+2 curves: F_1,0 = 0, smooth, pointless, not separated", suite_q_plus_2),
    "curve-count-hermitian-f4": (4, "Hermitian cubic meets d(q-d+2) with equality", suite_curve_count),
    "blocking-hermitian-f4": (5, "Hermitian cubic is a nontrivial blocking set", suite_blocking),
    "degree-corridor-q2": (6, "plane census at q = 2, d in {2,3,4,5}", suite_degree_corridor_q2),
    "degree-corridor-q3": (7, "plane census at q = 3, d in {3,4}", suite_degree_corridor_q3),
    "hermitian-decomposition-f9": (8, "Hermitian/skew-Hermitian split of all 2x2 matrices over F_9",
                                   suite_hermitian_decomposition),
    "hermitian-surface-f4": (9, "Hermitian surface over F_4", suite_hermitian_surface),
    "transversality-hermitian-f4": (10, "transverse lines of the Hermitian cubic", suite_transversality),
    "multi-frobenius": (11, "skew forms are FN over F_q and F_q^2 and Hermitian over F_q^2", suite_multi_frobenius),
    "separated-variables": (12, "separated smooth FN hits have d = 1 mod p", suite_separated_variables),
    "incidence-multiplicities": (13, "line intersections of FN curves", suite_incidence),
}


def run_suite(suite_id: str) -> SuiteResult:
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    crit, title, fn = SUITES[suite_id]
    t0 = time.perf_counter()
    checks = fn()
    return SuiteResult(suite_id, crit, title, checks, time.perf_counter() - t0)


__all__ = ["Check", "SUITES", "SuiteResult", "run_suite"]
