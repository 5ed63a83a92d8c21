"""Structural checks: separated variables, normal forms of the extremal degrees, reducedness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from ..errors import DegreeMismatch
from ..frobcore import as_frobenius_form, compute_F10
from ..mpoly import (
    HomogPoly,
    binary_squarefree,
    is_pth_power,
    poly_divides,
    poly_power,
    substitute_linear,
)
from ..projgeom import point_array
from ..vecfield import det, inverse, matmul
from .lines import restrict


# ------------------------------------------------------------ separated variables

@dataclass
class SeparatedSplit:
    """F = G + H with G in ``g_vars`` and H in ``h_vars`` (given coordinates only)."""

    g_vars: tuple
    h_vars: tuple
    G: HomogPoly
    H: HomogPoly

    @property
    def m(self) -> int:
        return len(self.g_vars) - 1

    def to_json(self):
        return {
            "g_vars": list(self.g_vars),
            "h_vars": list(self.h_vars),
            "G": str(self.G),
            "H": str(self.H),
            "scope": "separated in current coordinates",
        }


def variable_components(F: HomogPoly) -> list[tuple[int, ...]]:
    """Connected components of the co-occurrence graph on the variables that occur in F."""
    parent = list(range(F.nvars))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    present = set()
    for e in F.terms:
        vs = [i for i, k in enumerate(e) if k]
        present.update(vs)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comps: dict = {}
    for v in sorted(present):
        comps.setdefault(find(v), []).append(v)
    return sorted(tuple(c) for c in comps.values())


def separated_variables_detect(F: HomogPoly) -> SeparatedSplit | None:
    """Split F = G + H along disjoint variable sets, in the given coordinates.

    H takes the last co-occurrence component, G the remaining components
    together with the variables that do not occur.  Returns None when the
    variables cannot be split into two nonempty blocks.
    """
    if F.is_zero():
        return None
    comps = variable_components(F)
    present = {v for c in comps for v in c}
    absent = [v for v in range(F.nvars) if v not in present]
    if len(comps) + (1 if absent else 0) < 2:
        return None
    h_vars = comps[-1]
    g_vars = tuple(sorted(set(range(F.nvars)) - set(h_vars)))
    hs = set(h_vars)
    g_terms = {e: c for e, c in F.terms.items() if not any(e[v] for v in hs)}
    h_terms = {e: c for e, c in F.terms.items() if any(e[v] for v in hs)}
    G = HomogPoly(F.field, F.nvars, F.degree, g_terms, check=False)
    H = HomogPoly(F.field, F.nvars, F.degree, h_terms, check=False)
    return SeparatedSplit(g_vars, h_vars, G, H)


# ------------------------------------------------------------ normal forms

NORMAL_FORM_CLAUSES = ("skew_q_plus_1", "char2_even", "q_plus_2")


@dataclass
class NormalFormVerdict:
    clause: str
    matches: bool
    reason: str = ""
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.matches

    def to_json(self):
        return {"clause": self.clause, "matches": self.matches, "reason": self.reason,
                "details": {k: str(v) for k, v in self.details.items()}}


def _skew_check(M) -> str:
    """'' when the code matrix M is skew-symmetric with zero diagonal, else the failure reason."""
    K = M.field
    n = M.size
    for i in range(n):
        if M.rows[i][i]:
            return f"nonzero diagonal entry at {i}"
        for j in range(i + 1, n):
            if M.rows[i][j] != K.neg(M.rows[j][i]):
                return f"entries ({i},{j}) and ({j},{i}) are not opposite"
    return ""


def _match_skew(F: HomogPoly, q: int) -> NormalFormVerdict:
    clause = "skew_q_plus_1"
    M = as_frobenius_form(F, q)
    if M is None:
        return NormalFormVerdict(clause, False, "not of the form sum x_i^q A_ij x_j")
    why = _skew_check(M)
    if why:
        return NormalFormVerdict(clause, False, why)
    if any(not F.field.in_subfield(c, _log_q(F, q)) for r in M.rows for c in r):
        return NormalFormVerdict(clause, False, "matrix entries outside F_q")
    if det(F.field, [list(r) for r in M.rows]) == 0:
        return NormalFormVerdict(clause, False, "matrix is degenerate")
    return NormalFormVerdict(clause, True, "", {"matrix": M})


def _log_q(F: HomogPoly, q: int) -> int:
    K = F.field
    k = 0
    t = 1
    while t < q:
        t *= K.p
        k += 1
    return k


def _match_q_plus_2(F: HomogPoly, q: int) -> NormalFormVerdict:
    clause = "q_plus_2"
    K = F.field
    if K.p != 2 or F.nvars != 3:
        return NormalFormVerdict(clause, False, "needs p = 2 and a plane curve")
    lead = (q, 1, 1)
    c = F.terms.get(lead, 0)
    if not c:
        return NormalFormVerdict(clause, False, "no x0^q*x1*x2 term to rescale by")
    G = F.scale(K.element(K.inv(c)))
    core = {lead: 1, (1, q, 1): 1, (1, 1, q): 1}
    rest = {}
    for e, a in G.terms.items():
        b = K.sub(a, core.get(e, 0))
        if b:
            rest[e] = b
    for e in core:
        if e not in G.terms:
            rest[e] = K.neg(1)
    odd = [e for e in rest if any(x % 2 for x in e)]
    if odd:
        return NormalFormVerdict(clause, False, f"residual has odd exponent monomial {odd[0]}")
    return NormalFormVerdict(clause, True, "", {"scale": K.element(c)})


def _dual_points(F: HomogPoly, q: int):
    """Codes of the F_q-rational hyperplane duals, embedded in F's field."""
    from ..gf import embed_field, field_of_order

    K = F.field
    base = field_of_order(q) if q != K.q else K
    pts = point_array(F.nvars - 1, base)
    if base == K:
        return pts.tolist()
    img = embed_field(base, K).images
    return [[img[int(x)] for x in row] for row in pts]


def _match_char2_even(F: HomogPoly, q: int) -> NormalFormVerdict:
    clause = "char2_even"
    K = F.field
    n = F.nvars - 1
    if K.p != 2 or n % 2:
        return NormalFormVerdict(clause, False, "needs p = 2 and n even")
    f10 = compute_F10(F, q)
    div = poly_divides(F, f10)
    if not div.divides:
        return NormalFormVerdict(clause, False, "F does not divide F_1,0")
    Q = div.quotient
    for ell in _dual_points(F, q):
        lin = HomogPoly.linear(K, ell)
        if poly_power(lin, q - 1) != Q:
            continue
        v = _char2_coordinates(F, ell, q)
        if v is not None:
            return NormalFormVerdict(clause, True, "", {"y0": lin, **v})
    return NormalFormVerdict(clause, False, "no F_q-linear y0 with F_1,0 = y0^(q-1) F and a skew residual")


def _char2_coordinates(F: HomogPoly, ell, q: int):
    """Try coordinates y0 = ell, y_i (i >= 1) with the required shape; returns details or None."""
    K = F.field
    N = F.nvars
    j = next(i for i, x in enumerate(ell) if x)
    T = [list(ell)] + [[int(c == i) for c in range(N)] for i in range(N) if i != j]
    Tinv = inverse(K, T)
    for shift in itertools.product(range(q), repeat=N - 1):
        S = [[int(r == c) for c in range(N)] for r in range(N)]
        for i, s in enumerate(shift, start=1):
            S[i][0] = s
        A = matmul(K, Tinv, S)
        Fy = substitute_linear(F, A, N)
        with_y0 = {e: c for e, c in Fy.terms.items() if e[0]}
        rest = {e[1:]: c for e, c in Fy.terms.items() if not e[0]}
        # dG/dy0 = 0 in characteristic 2 means every exponent of y0 in G is even.
        if any((e[0] - 1) % 2 for e in with_y0):
            continue
        if not rest:
            continue
        R = HomogPoly(K, N - 1, F.degree, rest, check=False)
        B = as_frobenius_form(R, q)
        if B is None or _skew_check(B):
            continue
        if det(K, [list(r) for r in B.rows]) == 0:
            continue
        return {"coordinates": A, "B": B}
    return None


def normal_form_match(F: HomogPoly, clause: str, q: int | None = None) -> NormalFormVerdict:
    """Check F against one of the extremal-degree normal forms.

    skew_q_plus_1: F = sum x_i^q A_ij x_j, A skew with zero diagonal and
    nondegenerate.  char2_even: p = 2, n even, F_1,0 = y0^(q-1) F for an
    F_q-linear y0, and in coordinates completing y0 the form is
    y0*G + sum y_i^q B_ij y_j with dG/dy0 = 0 and B skew nondegenerate.
    q_plus_2: p = n = 2 and, after rescaling, F minus
    x0*x1*x2*(x0^(q-1) + x1^(q-1) + x2^(q-1)) has only even exponents.
    """
    q = F.field.q if q is None else q
    if clause not in NORMAL_FORM_CLAUSES:
        raise ValueError(f"unknown clause {clause!r}")
    want = q + 2 if clause == "q_plus_2" else q + 1
    if F.degree != want:
        raise DegreeMismatch(f"clause {clause} needs degree {want}, got {F.degree}")
    if clause == "skew_q_plus_1":
        return _match_skew(F, q)
    if clause == "q_plus_2":
        return _match_q_plus_2(F, q)
    return _match_char2_even(F, q)


def matching_clause(F: HomogPoly, q: int | None = None) -> str | None:
    """The first clause F matches, or None (degrees that fit no clause give None)."""
    q = F.field.q if q is None else q
    for clause in NORMAL_FORM_CLAUSES:
        want = q + 2 if clause == "q_plus_2" else q + 1
        if F.degree == want and normal_form_match(F, clause, q):
            return clause
    return None


# ------------------------------------------------------------ reducedness

@dataclass
class ReducednessVerdict:
    reduced: bool | None  # None when undecided
    method: str

    def to_json(self):
        return {"reduced": self.reduced, "method": self.method}


def _quadric_rank(F: HomogPoly) -> int:
    """Rank of the symmetric matrix of a quadratic form (odd characteristic)."""
    from ..vecfield import rank

    K = F.field
    N = F.nvars
    half = K.inv(2)
    S = [[0] * N for _ in range(N)]
    for e, c in F.terms.items():
        idx = [i for i, k in enumerate(e) if k]
        if len(idx) == 1:
            S[idx[0]][idx[0]] = c
        else:
            i, j = idx
            S[i][j] = S[j][i] = K.mul(c, half)
    return rank(K, S)


def reducedness(F: HomogPoly, max_lines: int = 5000) -> ReducednessVerdict:
    """Is F squarefree over the algebraic closure?

    Degree 2 is decided exactly.  In general a line whose restriction is
    squarefree of full degree proves reducedness, and a p-th power proves
    the opposite; otherwise the verdict is None.
    """
    if F.is_zero():
        return ReducednessVerdict(False, "zero polynomial")
    if F.degree <= 1:
        return ReducednessVerdict(True, "degree <= 1")
    if is_pth_power(F).is_power:
        return ReducednessVerdict(False, "p-th power")
    K = F.field
    if F.degree == 2:
        if K.p == 2:
            # a square of a linear form is exactly a form with all exponents even
            return ReducednessVerdict(True, "quadric, not a square")
        return ReducednessVerdict(_quadric_rank(F) >= 2, "quadric rank")
    if F.nvars == 2:
        return ReducednessVerdict(binary_squarefree(F), "binary squarefree")
    from ..gf import extension_of, MAX_ORDER
    from ..mpoly import change_field

    for m in (1, 2):
        if K.q ** m > MAX_ORDER:
            break
        L = extension_of(K, m)
        G = F if m == 1 else change_field(F, L)
        for count, line in enumerate(_lines_lazy(F.nvars - 1, L)):
            if count >= max_lines:
                break
            f = restrict(G, line)
            if not f.is_zero() and binary_squarefree(f):
                return ReducednessVerdict(True, f"squarefree restriction to a line over F_{L.q}")
    return ReducednessVerdict(None, "undecided")


def _lines_lazy(n, L):
    """Lines spanned by (1, 0, a_2..a_n) and (0, 1, b_2..b_n), generated lazily."""
    from ..projgeom import ProjLine

    for tail in itertools.product(range(L.q), repeat=2 * (n - 1)):
        r0 = (1, 0) + tail[: n - 1]
        r1 = (0, 1) + tail[n - 1:]
        yield ProjLine(L, (r0, r1), _canonical=True)


# ------------------------------------------------------------ binomial products

@dataclass
class BinomialGapReport:
    cases: int  # (q, d, m, g, h, r) combinations tried
    solutions: int  # products of the shape a t^(d+m) + b with a, b nonzero
    violations: list = dc_field(default_factory=list)  # (q, d, m, r) with d not dividing m


def binomial_gap_check(orders=(2, 3), max_d: int = 4, max_m: int = 8) -> BinomialGapReport:
    """Exhaustively test: (g t^d + h) r(t) = a t^(d+m) + b with g, h, a, b != 0, deg r = m forces d | m."""
    from .. import upoly
    from ..gf import field_of_order

    rep = BinomialGapReport(0, 0)
    for q in orders:
        K = field_of_order(q)
        units = range(1, q)
        for d in range(1, max_d + 1):
            for m in range(0, max_m + 1):
                for lead in units:
                    for low in itertools.product(range(q), repeat=m):
                        r = list(low) + [lead]
                        for g in units:
                            for h in units:
                                rep.cases += 1
                                prod = upoly.mul(K, [h] + [0] * (d - 1) + [g], r)
                                if len(prod) != d + m + 1 or not prod[0] or any(prod[1:-1]):
                                    continue
                                rep.solutions += 1
                                if m % d:
                                    rep.violations.append((q, d, m, tuple(r)))
    return rep
