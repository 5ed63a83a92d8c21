"""Smoothness: singular-point search over finite fields and exact certification.

Exact certification works with Macaulay matrices.  If forms g_0..g_n in n+1
variables have no common zero over the algebraic closure, generic
combinations of them form a regular sequence, so their ideal contains every
monomial of degree sum(deg g_i - 1) + 1.  If they do have a common zero,
nothing in the ideal of that degree is nonzero there.  Full column rank of
the Macaulay matrix in that degree is therefore equivalent to the absence
of common zeros, which is the same verdict as a nonzero Macaulay resultant.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import numpy as np

from ..errors import DegenerateMatrixConstruction, DimensionMismatch, FieldMismatch, FieldTooLarge, UncertifiableCase
from ..gf import MAX_ORDER, FieldElement, embed_field, extension_of
from ..mpoly import HomogPoly, binary_squarefree, change_field, gradient, monomials, substitute_linear
from ..vecfield import det, rank
from .points import singular_point_array

DEFAULT_EXTENSION = 3


def macaulay_matrix(forms, D: int, multipliers="all"):
    """Rows x^m * g for the given forms, columns the degree-D monomials (descending grevlex).

    Returns (matrix, column monomials).  ``multipliers="all"`` uses every
    multiplier monomial of degree D - deg g.
    """
    forms = list(forms)
    nvars = forms[0].nvars
    cols = monomials(nvars, D)
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for g in forms:
        if g.is_zero() or g.degree > D:
            continue
        items = list(g.terms.items())
        for m in monomials(nvars, D - g.degree):
            row = np.zeros(len(cols), dtype=np.int64)
            for e, c in items:
                row[index[tuple(a + b for a, b in zip(m, e))]] = c
            rows.append(row)
    M = np.array(rows, dtype=np.int64) if rows else np.zeros((0, len(cols)), dtype=np.int64)
    return M, cols


def _check_forms(forms):
    forms = list(forms)
    if not forms:
        raise DimensionMismatch("no forms given")
    K = forms[0].field
    nvars = forms[0].nvars
    for g in forms:
        if g.field != K:
            raise FieldMismatch("forms over different fields")
        if g.nvars != nvars:
            raise DimensionMismatch("forms in different numbers of variables")
    return forms, K, nvars


def no_common_zero(forms, D: int | None = None) -> bool:
    """True iff the forms have no common projective zero over the closure.

    Needs len(forms) >= nvars.  ``D`` defaults to the regularity degree
    computed from the largest degrees.
    """
    forms, K, nvars = _check_forms(forms)
    if len(forms) < nvars:
        return False
    if D is None:
        degs = sorted((g.degree for g in forms), reverse=True)[:nvars]
        D = sum(d - 1 for d in degs) + 1
    M, cols = macaulay_matrix(forms, max(D, 0))
    return rank(K, M) == len(cols)


def _classical_rows(forms, D):
    """The square classical Macaulay matrix and the indices of its extraneous minor."""
    nvars = forms[0].nvars
    degs = [g.degree for g in forms]
    cols = monomials(nvars, D)
    index = {e: i for i, e in enumerate(cols)}
    M = np.zeros((len(cols), len(cols)), dtype=np.int64)
    extra = []
    for r, a in enumerate(cols):
        big = [i for i in range(nvars) if a[i] >= degs[i]]
        i = big[0]
        if len(big) >= 2:
            extra.append(r)
        m = list(a)
        m[i] -= degs[i]
        for e, c in forms[i].terms.items():
            M[r, index[tuple(x + y for x, y in zip(m, e))]] = c
    return M, extra


def _unipotent_changes(K, nvars, limit):
    """Deterministic coordinate changes of determinant 1: identity, then x_i <- x_i + c x_j."""
    yield None
    count = 0
    for i in range(nvars):
        for j in range(nvars):
            if i == j:
                continue
            for c in range(1, K.q):
                M = [[int(r == s) for s in range(nvars)] for r in range(nvars)]
                M[i][j] = c
                yield M
                count += 1
                if count >= limit:
                    return
    # products of two elementary changes
    for i in range(nvars):
        for c in range(1, K.q):
            for c2 in range(1, K.q):
                M = [[int(r == s) for s in range(nvars)] for r in range(nvars)]
                M[i][(i + 1) % nvars] = c
                M[(i + 1) % nvars][(i + 2) % nvars] = c2
                yield M
                count += 1
                if count >= 2 * limit:
                    return


def _resultant_over(forms, L, D, limit):
    nvars = forms[0].nvars
    for A in _unipotent_changes(L, nvars, limit):
        pf = forms if A is None else [substitute_linear(g, A, nvars) for g in forms]
        M, extra = _classical_rows(pf, D)
        dE = det(L, M[np.ix_(extra, extra)]) if extra else 1
        if dE:
            return L.div(det(L, M), dE)
    return None


def macaulay_resultant(forms, limit: int = 256) -> FieldElement:
    """Resultant of n+1 forms in n+1 variables as det(M) / det(extraneous minor).

    If the extraneous minor vanishes, the forms are composed with
    deterministic coordinate changes of determinant 1, which leave the
    resultant unchanged; if every change fails over the base field, the
    same search runs over small extensions and the value is pulled back.
    Raises DegenerateMatrixConstruction if nothing works.
    """
    forms, K, nvars = _check_forms(forms)
    if len(forms) != nvars:
        raise DimensionMismatch(f"{len(forms)} forms in {nvars} variables")
    for g in forms:
        if g.degree < 1:
            raise DimensionMismatch("forms must have degree >= 1")
    D = sum(g.degree - 1 for g in forms) + 1
    for m in (1, 2, 3):
        if K.q ** m > MAX_ORDER:
            break
        L = extension_of(K, m)
        pf = forms if m == 1 else [change_field(g, L) for g in forms]
        r = _resultant_over(pf, L, D, limit)
        if r is None:
            continue
        if m == 1:
            return K.element(r)
        return K.element(embed_field(K, L).preimages[r])
    raise DegenerateMatrixConstruction("extraneous minor vanishes under every tried coordinate change")


@dataclass
class SmoothnessVerdict:
    smooth: bool
    mode: str  # "rational_only", "extension" or "certified"
    certified: bool  # True when the verdict holds over the algebraic closure
    method: str
    checked_extensions: list = dc_field(default_factory=list)
    witness: tuple | None = None  # codes of a singular point and the degree of its field
    note: str = ""

    def __bool__(self):
        return self.smooth

    @property
    def label(self) -> str:
        if self.certified:
            return "smooth (certified)" if self.smooth else "singular"
        if not self.smooth:
            return "singular"
        if self.mode == "rational_only":
            return "smooth at F_q-points (partial certificate)"
        return f"no singular points over F_q^m, m <= {max(self.checked_extensions)} (partial certificate)"

    def to_json(self):
        return {
            "smooth": self.smooth,
            "mode": self.mode,
            "certified": self.certified,
            "method": self.method,
            "checked_extensions": list(self.checked_extensions),
            "witness": None if self.witness is None else {"point": list(self.witness[0]), "m": self.witness[1]},
            "label": self.label,
            "note": self.note,
        }


def _search(F, ms):
    checked = []
    for m in ms:
        try:
            S = singular_point_array(F, m, first_only=True)
        except FieldTooLarge:
            break
        checked.append(m)
        if S.shape[0]:
            return checked, (tuple(int(x) for x in S[0]), m)
    return checked, None


def certify_smooth(F: HomogPoly):
    """Exact geometric smoothness; returns (smooth, method).

    Raises UncertifiableCase when p divides d and n >= 3.
    """
    K = F.field
    n = F.nvars - 1
    d = F.degree
    if F.is_zero():
        return False, "zero polynomial"
    if d == 0:
        return True, "constant"
    if n == 0:
        return True, "empty"
    if d == 1:
        return True, "hyperplane"
    if n == 1:
        return binary_squarefree(F), "binary_squarefree"
    grad = gradient(F)
    if d % K.p:
        # Euler: the singular locus is the common zero locus of the partials.
        D = (n + 1) * (d - 2) + 1
        return no_common_zero(grad, D), "macaulay_partials"
    if n == 2:
        # F, F_0, F_1, F_2 in three variables: regular-sequence degrees d-1, d-1, d.
        return no_common_zero([F] + grad, 3 * d - 4), "macaulay_with_form"
    raise UncertifiableCase(f"no exact certificate for p | d (p={K.p}, d={d}) with n = {n} >= 3")


def smoothness(F: HomogPoly, mode: str = "certified", M: int = DEFAULT_EXTENSION) -> SmoothnessVerdict:
    """Smoothness verdict in the requested mode.

    rational_only: no singular F_q-points.  extension: no singular points over
    F_{q^m} for m <= M (partial certificate).  certified: exact verdict over
    the algebraic closure.
    """
    if mode == "rational_only":
        checked, wit = _search(F, [1])
        return SmoothnessVerdict(wit is None, mode, wit is not None, "enumeration", checked, wit)
    if mode == "extension":
        checked, wit = _search(F, range(1, M + 1))
        note = "" if checked and max(checked) == M else "stopped at the field size cap"
        return SmoothnessVerdict(wit is None, mode, wit is not None, "enumeration", checked, wit, note)
    if mode == "certified":
        ok, method = certify_smooth(F)
        wit = None
        checked = []
        if not ok and F.nvars > 1 and F.degree >= 1:
            checked, wit = _search(F, [1])
        return SmoothnessVerdict(ok, mode, True, method, checked, wit)
    raise ValueError(f"unknown smoothness mode {mode!r}")


def best_smoothness(F: HomogPoly, M: int = DEFAULT_EXTENSION) -> SmoothnessVerdict:
    """Certified verdict when available, else the extension search with a partial label."""
    try:
        return smoothness(F, "certified")
    except UncertifiableCase as exc:
        v = smoothness(F, "extension", M)
        v.note = (v.note + "; " if v.note else "") + str(exc)
        return v


def smooth_at_rational_points(F: HomogPoly) -> bool:
    return singular_point_array(F, 1, first_only=True).shape[0] == 0


__all__ = [
    "SmoothnessVerdict",
    "best_smoothness",
    "certify_smooth",
    "macaulay_matrix",
    "macaulay_resultant",
    "no_common_zero",
    "smooth_at_rational_points",
    "smoothness",
]
