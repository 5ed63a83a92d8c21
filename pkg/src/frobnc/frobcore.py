"""Frobenius nonclassicality and Frobenius forms.

For a form F over a finite field and a power q of the characteristic,
F_{a,b} = sum_i x_i^(q^a) (dF/dx_i)^(q^b).  The hypersurface {F = 0} is
Frobenius nonclassical over F_q exactly when F divides F_{1,0}.

Forms of the shape sum_{i,j} x_i^q' M_ij x_j are handled through
:class:`SesquiMatrix`, which carries the Hermitian / skew-Hermitian tests,
the decomposition M = M1 + M2 (odd characteristic) and the congruence
normal form P^bar^t M P = diag(1, ..., 1, 0, ..., 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    CharacteristicTwo,
    DegreeMismatch,
    DegreeOverflow,
    FieldMismatch,
    NotASquare,
    NotHermitian,
    ZeroMatrix,
    ZeroPolynomial,
)
from .gf import FieldElement, FieldSpec, field_of_order, make_field, prime_power
from .mpoly import (
    MAX_DEGREE,
    HomogPoly,
    change_field,
    descend,
    format_poly,
    frobenius_twist,
    partial_derivative,
    poly_divides,
    poly_power,
)
from .projgeom import ProjPoint, point_array
from .vecfield import eval_poly, vec_field


def _log_p(q: int, p: int) -> int:
    s = 0
    m = q
    while m % p == 0 and m > 1:
        m //= p
        s += 1
    if m != 1:
        raise ValueError(f"q = {q} is not a power of the characteristic {p}")
    return s


def compute_Fab(F: HomogPoly, a: int, b: int, q: int) -> HomogPoly:
    """sum_i x_i^(q^a) * (dF/dx_i)^(q^b)."""
    if a < 1 or b < 0:
        raise ValueError("need a >= 1 and b >= 0")
    K = F.field
    s = _log_p(q, K.p)
    qa = q ** a
    deg = qa + max(F.degree - 1, 0) * q ** b
    if deg > MAX_DEGREE:
        raise DegreeOverflow(f"F_{{{a},{b}}} would have degree {deg}")
    out = HomogPoly.zero(K, F.nvars, deg)
    for i in range(F.nvars):
        Fi = partial_derivative(F, i)
        if Fi.is_zero():
            continue
        tw = frobenius_twist(Fi, s * b)
        terms = {}
        for e, c in tw.terms.items():
            ne = list(e)
            ne[i] += qa
            terms[tuple(ne)] = c
        out = out + HomogPoly(K, F.nvars, deg, terms, check=False)
    return out


def compute_F10(F: HomogPoly, q: int) -> HomogPoly:
    return compute_Fab(F, 1, 0, q)


@dataclass
class FrobClassification:
    nonclassical: bool
    kind: str  # "zero", "scalar_power", "divisible_other", "not_divisible"
    q: int
    c: FieldElement | None = None
    e: int | None = None
    quotient: HomogPoly | None = None
    f10: HomogPoly | None = dc_field(default=None, repr=False)

    @property
    def f10_kind(self) -> str:
        return self.kind

    def to_json(self) -> dict:
        return {
            "nonclassical": self.nonclassical,
            "kind": self.kind,
            "c": None if self.c is None else str(self.c),
            "e": self.e,
            "quotient": None if self.quotient is None else format_poly(self.quotient),
        }


def scalar_power_exponent(q: int, d: int) -> int | None:
    """The only e with deg F_{1,0} = e * deg F, when it is an integer."""
    if d <= 0 or (q + d - 1) % d:
        return None
    return (q + d - 1) // d


def is_frobenius_nonclassical(F: HomogPoly, q: int) -> FrobClassification:
    if F.is_zero():
        raise ZeroPolynomial("the zero polynomial does not define a hypersurface")
    K = F.field
    F10 = compute_F10(F, q)
    if F10.is_zero():
        qdeg = max(F10.degree - F.degree, 0)
        return FrobClassification(True, "zero", q, quotient=HomogPoly.zero(K, F.nvars, qdeg), f10=F10)
    verdict = poly_divides(F, F10)
    if not verdict.divides:
        return FrobClassification(False, "not_divisible", q, f10=F10)
    Q = verdict.quotient
    e = scalar_power_exponent(q, F.degree)
    if e is not None and e >= 1:
        Fe1 = poly_power(F, e - 1)
        lead_e, lead_c = Fe1.leading_term()
        qc = Q.terms.get(lead_e)
        if qc is not None:
            c = K.div(qc, lead_c)
            if Fe1.scale(FieldElement(K, c)) == Q:
                return FrobClassification(True, "scalar_power", q, c=FieldElement(K, c), e=e, quotient=Q, f10=F10)
    return FrobClassification(True, "divisible_other", q, quotient=Q, f10=F10)


@dataclass
class PointwiseVerdict:
    passed: bool
    field: FieldSpec
    checked: int
    counterexample: ProjPoint | None = None

    def __bool__(self):
        return self.passed


def points_field(F: HomogPoly, q: int, m: int) -> FieldSpec:
    """Smallest default field containing F's coefficients and F_{q^m}."""
    K = F.field
    s = _log_p(q, K.p)
    k = s * m * K.k // math.gcd(s * m, K.k)
    if k == K.k:
        return K
    return make_field(K.p, k)


def pointwise_fn_check(F: HomogPoly, q: int, m: int = 1) -> PointwiseVerdict:
    """Check that Phi_q(P) lies on T_P X at every smooth point P of X over F_{q^m}."""
    L = points_field(F, q, m)
    V = vec_field(L)
    n = F.nvars - 1
    X = point_array(n, L)
    chunk = 1 << 16
    grads = [partial_derivative(F, i) for i in range(F.nvars)]
    checked = 0
    for start in range(0, X.shape[0], chunk):
        P = X[start:start + chunk]
        on = eval_poly(F, P, L) == 0
        if not on.any():
            continue
        P = P[on]
        Gv = [eval_poly(g, P, L) for g in grads]
        smooth = np.zeros(P.shape[0], dtype=bool)
        for g in Gv:
            smooth |= g != 0
        acc = np.zeros(P.shape[0], dtype=np.int64)
        for i, g in enumerate(Gv):
            acc = V.add(acc, V.mul(V.pow(P[:, i], q), g))
        bad = smooth & (acc != 0)
        checked += int(smooth.sum())
        if bad.any():
            idx = int(np.nonzero(bad)[0][0])
            return PointwiseVerdict(False, L, checked, ProjPoint(L, [int(x) for x in P[idx]]))
    return PointwiseVerdict(True, L, checked)


def multi_fn_profile(F: HomogPoly, q: int, degrees) -> dict[int, FrobClassification]:
    """Classification over F_{q^m} for each m in ``degrees``.

    Divisibility of polynomials does not change under field extension, so
    every classification is computed over F's own field.
    """
    return {m: is_frobenius_nonclassical(F, q ** m) for m in degrees}


# ------------------------------------------------------------ sesquilinear

class SesquiMatrix:
    """Square matrix over a field of order twist^2 (twist = q')."""

    __slots__ = ("field", "rows", "twist")

    def __init__(self, field: FieldSpec, rows, twist: int):
        self.field = field
        out = []
        size = len(rows)
        for r in rows:
            if len(r) != size:
                raise ValueError("matrix must be square")
            row = []
            for c in r:
                if isinstance(c, FieldElement):
                    if c.field != field:
                        raise FieldMismatch(f"entry from {c.field}, expected {field}")
                    row.append(c.code)
                else:
                    c = int(c)
                    row.append(field.from_int(c) if c < 0 else c)
            out.append(tuple(row))
        self.rows = tuple(out)
        self.twist = twist

    @property
    def size(self):
        return len(self.rows)

    def entry(self, i, j) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def _new(self, rows):
        M = SesquiMatrix.__new__(SesquiMatrix)
        M.field = self.field
        M.rows = tuple(tuple(r) for r in rows)
        M.twist = self.twist
        return M

    def conj(self):
        K = self.field
        return self._new([[K.pow(c, self.twist) for c in r] for r in self.rows])

    def transpose(self):
        return self._new(list(zip(*self.rows)))

    def conj_transpose(self):
        return self.conj().transpose()

    def __add__(self, other):
        K = self.field
        return self._new([[K.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        K = self.field
        return self._new([[K.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        K = self.field
        return self._new([[K.neg(a) for a in r] for r in self.rows])

    def scale(self, c):
        K = self.field
        c = c.code if isinstance(c, FieldElement) else c
        return self._new([[K.mul(a, c) for a in r] for r in self.rows])

    def matmul(self, other):
        K = self.field
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = K.add(acc, K.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return self._new(out)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def form(self, left_exp=None, right_exp=1) -> HomogPoly:
        """sum_{i,j} x_i^left M_ij x_j^right (default left = twist)."""
        K = self.field
        left = self.twist if left_exp is None else left_exp
        n = self.size
        terms = {}
        for i in range(n):
            for j in range(n):
                c = self.rows[i][j]
                if not c:
                    continue
                e = [0] * n
                e[i] += left
                e[j] += right_exp
                e = tuple(e)
                v = K.add(terms.get(e, 0), c)
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return HomogPoly(K, n, left + right_exp, terms, check=False)

    def __eq__(self, other):
        return (isinstance(other, SesquiMatrix) and self.field == other.field
                and self.rows == other.rows and self.twist == other.twist)

    def __hash__(self):
        return hash((self.field, self.rows, self.twist))

    def __repr__(self):
        K = self.field
        body = "; ".join(" ".join(K.format_code(c) for c in r) for r in self.rows)
        return f"SesquiMatrix[{body}] (q'={self.twist})"

    @classmethod
    def identity(cls, field, size, twist):
        return cls(field, [[1 if i == j else 0 for j in range(size)] for i in range(size)], twist)


def as_frobenius_form(F: HomogPoly, qp: int) -> SesquiMatrix | None:
    """M with F = sum x_i^q' M_ij x_j, or None when F has another monomial shape."""
    if qp < 2:
        raise DegreeMismatch("the twist q' must be at least 2")
    _log_p(qp, F.field.p)
    if F.degree != qp + 1:
        raise DegreeMismatch(f"degree {F.degree} is not q'+1 = {qp + 1}")
    n = F.nvars
    M = [[0] * n for _ in range(n)]
    for e, c in F.terms.items():
        if qp + 1 in e:
            i = e.index(qp + 1)
            M[i][i] = c
            continue
        if qp not in e or 1 not in e:
            return None
        i = e.index(qp)
        j = e.index(1)
        M[i][j] = c
    return SesquiMatrix(F.field, M, qp)


def _require_square_order(M: SesquiMatrix):
    if M.field.q != M.twist ** 2:
        raise NotASquare(f"field order {M.field.q} is not q'^2 = {M.twist ** 2}")


def hermitian_tests(M: SesquiMatrix) -> dict:
    _require_square_order(M)
    Mb = M.conj()
    Mt = M.transpose()
    return {"is_hermitian": Mb == Mt, "is_skew_hermitian": Mb == -Mt}


def is_hermitian_matrix(M: SesquiMatrix) -> bool:
    return hermitian_tests(M)["is_hermitian"]


def hermitian_decompose(M: SesquiMatrix) -> tuple[SesquiMatrix, SesquiMatrix]:
    """M = M1 + M2 with M1 Hermitian and M2 skew-Hermitian (odd characteristic)."""
    K = M.field
    if K.p == 2:
        raise CharacteristicTwo("the decomposition divides by 2")
    _require_square_order(M)
    half = K.inv(2 % K.p)
    Mh = M.conj_transpose()
    return (M + Mh).scale(half), (M - Mh).scale(half)


def decomposition_forms(M: SesquiMatrix):
    """(G, F1, F2): G = x^q' M (x^{q'^2})^t and the Frobenius forms of the two parts."""
    M1, M2 = hermitian_decompose(M)
    G = M.form(left_exp=M.twist, right_exp=M.twist ** 2)
    return G, M1.form(), M2.form()


def _herm(M: SesquiMatrix, u, v):
    """u-bar^t M v."""
    K = M.field
    qp = M.twist
    acc = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        ubar = K.pow(ui, qp)
        row = M.rows[i]
        s = 0
        for j, vj in enumerate(v):
            if vj and row[j]:
                s = K.add(s, K.mul(row[j], vj))
        acc = K.add(acc, K.mul(ubar, s))
    return acc


def _independent(K: FieldSpec, vectors):
    """Greedy subset of linearly independent vectors (codes), in order."""
    from .vecfield import rank

    kept = []
    for v in vectors:
        if not any(v):
            continue
        if rank(K, kept + [v]) == len(kept) + 1:
            kept.append(v)
    return kept


def hermitian_normalize(M: SesquiMatrix):
    """Return (P, r) with P-bar^t M P = diag(1 (r times), 0, ..., 0); P's columns are basis vectors."""
    _require_square_order(M)
    if M.is_zero():
        raise ZeroMatrix("zero matrix has no normal form")
    if not is_hermitian_matrix(M):
        raise NotHermitian("matrix is not Hermitian")
    K = M.field
    qp = M.twist
    n = M.size
    norm_root = {}
    for s in range(1, K.q):
        norm_root.setdefault(K.pow(s, qp + 1), s)
    remaining = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    cols = []
    while remaining:
        v = None
        for u in remaining:
            if _herm(M, u, u):
                v = u
                break
        if v is None:
            for a in range(len(remaining)):
                for b in range(a + 1, len(remaining)):
                    for lam in range(1, K.q):
                        w = [K.add(x, K.mul(lam, y)) for x, y in zip(remaining[a], remaining[b])]
                        if _herm(M, w, w):
                            v = w
                            break
                    if v:
                        break
                if v:
                    break
        if v is None:
            break
        c = _herm(M, v, v)
        s = norm_root[K.inv(c)]
        v = [K.mul(s, x) for x in v]
        proj = []
        for u in remaining:
            h = _herm(M, v, u)
            proj.append([K.sub(x, K.mul(h, y)) for x, y in zip(u, v)])
        cols.append(v)
        remaining = _independent(K, proj)
    r = len(cols)
    P_cols = cols + remaining
    P = SesquiMatrix(K, [[P_cols[j][i] for j in range(n)] for i in range(n)], qp)
    return P, r


def congruence(M: SesquiMatrix, P: SesquiMatrix) -> SesquiMatrix:
    """P-bar^t M P."""
    return P.conj_transpose().matmul(M).matmul(P)


@dataclass
class HermitianVerdict:
    is_hermitian: bool
    scale: FieldElement | None = None
    matrix: SesquiMatrix | None = None
    transform: SesquiMatrix | None = None
    rank: int | None = None
    note: str = "structural test in the given coordinates"

    def __bool__(self):
        return self.is_hermitian


def is_hermitian_hypersurface(F: HomogPoly, q: int) -> HermitianVerdict:
    """Decide whether some scalar multiple of F is x-bar^t H x with H Hermitian, in F's coordinates."""
    p, k = prime_power(q)
    if k % 2:
        raise NotASquare(f"q = {q} is not a square")
    qp = p ** (k // 2)
    if F.degree != qp + 1:
        raise DegreeMismatch(f"degree {F.degree} is not sqrt(q)+1 = {qp + 1}")
    K = field_of_order(q)
    if F.field != K:
        if F.field.p != p:
            raise FieldMismatch(f"{F.field} has the wrong characteristic")
        if k % F.field.k == 0:
            F = change_field(F, K)
        else:
            G = descend(F, K)
            if G is None:
                return HermitianVerdict(False, note="coefficients outside F_q")
            F = G
    M = as_frobenius_form(F, qp)
    if M is None:
        return HermitianVerdict(False)
    for c in range(1, K.q):
        cM = M.scale(c)
        if is_hermitian_matrix(cM):
            P, r = hermitian_normalize(cM)
            return HermitianVerdict(True, FieldElement(K, c), cM, P, r)
    return HermitianVerdict(False, matrix=M)
