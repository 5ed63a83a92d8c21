"""Constructors for the explicit hypersurface families, each with an executable manifest.

Every generator returns a :class:`FamilyInstance` whose ``asserted``
properties are tags that :meth:`FamilyInstance.check` evaluates with the
frobcore and analysis routines.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    BadDimension,
    BadG,
    Degenerate,
    DegreeMismatch,
    FieldMismatch,
    InvalidParameters,
    NotABasis,
    NotASquare,
    NotHermitianMatrix,
    NotSkew,
    OddN,
    OddSize,
    VerificationFailure,
    WrongCharacteristic,
)
from .frobcore import SesquiMatrix, compute_F10, is_frobenius_nonclassical, is_hermitian_hypersurface
from .gf import FieldElement, FieldSpec, extension_of, field_of_order
from .mpoly import (
    HomogPoly,
    change_field,
    descend,
    format_poly,
    parse_poly,
    partial_derivative,
    poly_power,
)
from .vecfield import det as mat_det

FAMILY_IDS = (
    "space-filling",
    "skew-form",
    "hermitian",
    "char2-even",
    "q-plus-2",
    "norm-pointless",
    "diagonal-pointless",
    "separated",
    "fermat",
)


@dataclass(frozen=True)
class Property:
    """A checkable claim about a family member.

    Tags: fn_over (arg: field order), f10_zero, f10_power (arg: (e, c, order)),
    f10_relation (F_1,0 = x0^(q-1) F), space_filling, smooth, singular,
    pointless, hermitian (arg: order), separated_variables, not_separated,
    q_plus_2_partials, hessian_zero.
    """

    tag: str
    arg: object = None

    def __str__(self):
        if self.arg is None:
            return self.tag
        if isinstance(self.arg, tuple):
            return f"{self.tag}({','.join(str(a) for a in self.arg)})"
        return f"{self.tag}({self.arg})"


@dataclass
class FamilyInstance:
    polynomial: HomogPoly
    family: str
    q: int  # order of the base field F_q the claims refer to
    params: dict = dc_field(default_factory=dict)
    asserted: list = dc_field(default_factory=list)

    @property
    def n(self) -> int:
        return self.polynomial.nvars - 1

    def check_property(self, prop: Property) -> bool:
        return _CHECKS[prop.tag](self, prop.arg)

    def check(self) -> list[tuple[Property, bool]]:
        return [(p, self.check_property(p)) for p in self.asserted]

    def verify(self) -> "FamilyInstance":
        """Raise VerificationFailure naming the first asserted property that fails."""
        for p, ok in self.check():
            if not ok:
                raise VerificationFailure(f"{self.family}: asserted property {p} does not hold for {self.polynomial}")
        return self

    def manifest(self) -> dict:
        K = self.polynomial.field
        return {
            "family": self.family,
            "field": {"p": K.p, "k": K.k, "modulus": list(K.modulus)},
            "q": self.q,
            "n": self.n,
            "degree": self.polynomial.degree,
            "polynomial": format_poly(self.polynomial),
            "params": {k: _plain(v) for k, v in self.params.items()},
            "asserted_properties": [str(p) for p in self.asserted],
        }


def _plain(v):
    if isinstance(v, (HomogPoly,)):
        return format_poly(v)
    if isinstance(v, SesquiMatrix):
        return [list(r) for r in v.rows]
    if isinstance(v, FieldElement):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


# ------------------------------------------------------------ property checks

def _chk_fn(inst, order):
    return is_frobenius_nonclassical(inst.polynomial, order).nonclassical


def _chk_f10_zero(inst, _):
    return compute_F10(inst.polynomial, inst.q).is_zero()


def _chk_f10_power(inst, arg):
    e, c, order = arg
    F = inst.polynomial
    K = F.field
    return compute_F10(F, order) == poly_power(F, e).scale(K.from_int(c) if isinstance(c, int) and c < 0 else c)


def _chk_relation(inst, _):
    F = inst.polynomial
    K = F.field
    x0 = HomogPoly.variable(K, F.nvars, 0)
    return compute_F10(F, inst.q) == poly_power(x0, inst.q - 1) * F


def _count(inst):
    """Number of F_q-points, with q the instance's base order."""
    from .analysis.points import count_points

    F = inst.polynomial
    if F.field.q != inst.q:
        F = descend(F, field_of_order(inst.q))
        if F is None:
            raise VerificationFailure(f"{inst.family}: polynomial is not defined over F_{inst.q}")
    return count_points(F, 1)


def _chk_space_filling(inst, _):
    from .projgeom import num_points

    return _count(inst) == num_points(inst.n, inst.q)


def _chk_pointless(inst, _):
    return _count(inst) == 0


def _smooth(inst):
    from .analysis.smooth import best_smoothness

    return best_smoothness(inst.polynomial)


def _chk_smooth(inst, _):
    v = _smooth(inst)
    return v.smooth and v.certified


def _chk_singular(inst, _):
    v = _smooth(inst)
    return not v.smooth


def _chk_hermitian(inst, order):
    # scans the scalar multiples, so the alpha rescaling of a skew form is found too
    return is_hermitian_hypersurface(inst.polynomial, order).is_hermitian


def _chk_separated(inst, _):
    from .analysis.structure import separated_variables_detect

    return separated_variables_detect(inst.polynomial) is not None


def _chk_not_separated(inst, _):
    return not _chk_separated(inst, None)


def _chk_partials(inst, _):
    F = inst.polynomial
    K = F.field
    q = inst.q
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        e1 = [0, 0, 0]
        e1[j], e1[k] = 1, q
        e2 = [0, 0, 0]
        e2[j], e2[k] = q, 1
        want = HomogPoly(K, 3, q + 1, {tuple(e1): 1, tuple(e2): K.neg(1)})
        if partial_derivative(F, i) != want:
            return False
    return True


def _chk_hessian_zero(inst, _):
    return hessian_determinant(inst.polynomial).is_zero()


_CHECKS = {
    "fn_over": _chk_fn,
    "f10_zero": _chk_f10_zero,
    "f10_power": _chk_f10_power,
    "f10_relation": _chk_relation,
    "space_filling": _chk_space_filling,
    "pointless": _chk_pointless,
    "smooth": _chk_smooth,
    "singular": _chk_singular,
    "hermitian": _chk_hermitian,
    "separated_variables": _chk_separated,
    "not_separated": _chk_not_separated,
    "q_plus_2_partials": _chk_partials,
    "hessian_zero": _chk_hessian_zero,
}


def hessian_determinant(F: HomogPoly) -> HomogPoly:
    """det of the matrix of second partial derivatives (cofactor expansion)."""
    N = F.nvars
    H = [[partial_derivative(partial_derivative(F, i), j) for j in range(N)] for i in range(N)]

    def det(rows, cols):
        if len(rows) == 1:
            return H[rows[0]][cols[0]]
        acc = None
        for t, c in enumerate(cols):
            minor = det(rows[1:], cols[:t] + cols[t + 1:])
            term = H[rows[0]][c] * minor
            if t % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    return det(list(range(N)), list(range(N)))


# ------------------------------------------------------------ helpers

def _matrix_rows(A, field: FieldSpec | None):
    if isinstance(A, SesquiMatrix):
        if field is not None and field != A.field:
            raise FieldMismatch("matrix over a different field")
        return A.field, [list(r) for r in A.rows]
    if field is None:
        raise InvalidParameters("a field is needed for a plain matrix")
    rows = []
    for r in A:
        row = []
        for c in r:
            if isinstance(c, FieldElement):
                row.append(c.code)
            else:
                c = int(c)
                row.append(field.from_int(c) if c < 0 else c)
        rows.append(row)
    return field, rows


def _check_skew(K, rows, what="A"):
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSkew(f"{what} is not square")
    for i in range(n):
        if rows[i][i]:
            raise NotSkew(f"{what} has a nonzero diagonal entry at {i}")
        for j in range(i + 1, n):
            if rows[i][j] != K.neg(rows[j][i]):
                raise NotSkew(f"{what} is not skew-symmetric at ({i},{j})")
    if n and mat_det(K, rows) == 0:
        raise Degenerate(f"{what} is degenerate")


def frobenius_form(K: FieldSpec, rows, qp: int, offset: int = 0, nvars: int | None = None) -> HomogPoly:
    """sum x_{i+offset}^qp M_ij x_{j+offset}."""
    n = len(rows)
    nvars = n + offset if nvars is None else nvars
    terms = {}
    for i in range(n):
        for j in range(n):
            c = rows[i][j]
            if not c:
                continue
            e = [0] * nvars
            e[i + offset] += qp
            e[j + offset] += 1
            e = tuple(e)
            v = K.add(terms.get(e, 0), c)
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
    return HomogPoly(K, nvars, qp + 1, terms, check=False)


def standard_symplectic(size: int, field: FieldSpec):
    rows = [[0] * size for _ in range(size)]
    for i in range(0, size, 2):
        rows[i][i + 1] = 1
        rows[i + 1][i] = field.neg(1)
    return rows


# ------------------------------------------------------------ generators

def gen_skew_form(A, field: FieldSpec | int | None = None) -> FamilyInstance:
    """F = sum x_i^q A_ij x_j for a nondegenerate skew matrix A over F_q with zero diagonal.

    ``field`` may be given as the order q.
    """
    if isinstance(field, int):
        field = field_of_order(field)
    K, rows = _matrix_rows(A, field)
    if len(rows) % 2:
        raise OddSize(f"skew form needs an even size (n odd), got size {len(rows)}")
    _check_skew(K, rows)
    q = K.q
    F = frobenius_form(K, rows, q)
    asserted = [
        Property("f10_zero"),
        Property("fn_over", q),
        Property("fn_over", q * q),
        Property("f10_power", (q, -1, q * q)),
        Property("smooth"),
        Property("space_filling"),
    ]
    params = {"matrix": rows, "q": q}
    if q * q <= 1 << 16:
        L = extension_of(K, 2)
        alpha = _alpha(L, q)
        params["alpha"] = L.element(alpha)
        params["alpha_code"] = alpha
        asserted.append(Property("hermitian", q * q))
    return FamilyInstance(F, "skew-form", q, params, asserted)


def _alpha(L: FieldSpec, q: int) -> int:
    """First nonzero alpha in F_{q^2} with alpha^q = -alpha."""
    for a in range(1, L.q):
        if L.pow(a, q) == L.neg(a):
            return a
    raise VerificationFailure("no alpha with alpha^q = -alpha")


def gen_space_filling(q: int, n: int = 3) -> FamilyInstance:
    """The skew form with the standard symplectic matrix, sum (x_2i^q x_2i+1 - x_2i x_2i+1^q)."""
    if n % 2 == 0:
        raise OddSize(f"space-filling skew form needs n odd, got n = {n}")
    K = field_of_order(q)
    inst = gen_skew_form(standard_symplectic(n + 1, K), K)
    inst.family = "space-filling"
    return inst


def gen_hermitian(n: int, r: int, field: FieldSpec) -> FamilyInstance:
    """sum_{i <= r} x_i^(sqrt q + 1) in P^n."""
    if field.k % 2:
        raise NotASquare(f"q = {field.q} is not a square")
    if not 0 <= r <= n:
        raise InvalidParameters(f"need 0 <= r <= n, got r = {r}, n = {n}")
    s = field.sqrt_q
    q = field.q
    terms = {}
    for i in range(r + 1):
        e = [0] * (n + 1)
        e[i] = s + 1
        terms[tuple(e)] = 1
    F = HomogPoly(field, n + 1, s + 1, terms)
    asserted = [
        Property("fn_over", q),
        Property("f10_power", (s, 1, q)),
        Property("hermitian", q),
        Property("smooth") if r == n else Property("singular"),
    ]
    return FamilyInstance(F, "hermitian", q, {"n": n, "r": r}, asserted)


def gen_hermitian_from_matrix(H) -> FamilyInstance:
    """x-bar^t H x for a nonzero Hermitian matrix H over F_q (q square)."""
    if not isinstance(H, SesquiMatrix):
        raise InvalidParameters("expected a SesquiMatrix")
    K = H.field
    if K.k % 2:
        raise NotASquare(f"q = {K.q} is not a square")
    s = K.sqrt_q
    if H.twist != s:
        H = SesquiMatrix(K, [list(r) for r in H.rows], s)
    if H.is_zero() or H.conj() != H.transpose():
        raise NotHermitianMatrix("matrix is zero or not Hermitian")
    F = H.form()
    nondeg = mat_det(K, [list(r) for r in H.rows]) != 0
    asserted = [
        Property("fn_over", K.q),
        Property("f10_power", (s, 1, K.q)),
        Property("hermitian", K.q),
        Property("smooth") if nondeg else Property("singular"),
    ]
    return FamilyInstance(F, "hermitian", K.q, {"matrix": H}, asserted)


def gen_char2_even(q: int, n: int, G: HomogPoly, B) -> FamilyInstance:
    """F = x0*G + sum_{i,j >= 1} x_i^q B_ij x_j with dG/dx0 = 0 and B skew nondegenerate.

    The relation F_1,0 = x0^(q-1) F and smoothness are checked, and asserted
    only when they hold.
    """
    K = field_of_order(q)
    if K.p != 2:
        raise WrongCharacteristic(f"needs characteristic 2, got q = {q}")
    if n % 2:
        raise OddN(f"needs n even, got n = {n}")
    if G.field != K:
        raise FieldMismatch(f"G is over {G.field}, expected {K}")
    if G.nvars != n + 1 or G.degree != q:
        raise BadG(f"G must be a form of degree q = {q} in {n + 1} variables")
    if not partial_derivative(G, 0).is_zero():
        raise BadG("dG/dx0 must vanish")
    _, rows = _matrix_rows(B, K)
    if len(rows) != n:
        raise BadG(f"B must have size n = {n}")
    _check_skew(K, rows, "B")
    x0 = HomogPoly.variable(K, n + 1, 0)
    F = x0 * G + frobenius_form(K, rows, q, offset=1, nvars=n + 1)
    inst = FamilyInstance(F, "char2-even", q, {"G": G, "B": rows}, [])
    if _chk_relation(inst, None):
        inst.asserted += [Property("fn_over", q), Property("f10_relation")]
        if _chk_smooth(inst, None):
            inst.asserted.append(Property("smooth"))
    inst.params["relation_holds"] = bool(inst.asserted)
    return inst


gen_char2_even_n = gen_char2_even


BUILTIN_CHAR2_EVEN = {
    # over F_4: x0*((a+1)x0^4 + x0^2x1^2 + x0^2x1x2 + x0^2x2^2 + x1^4 + x1^2x2^2 + x2^4) + x1^4x2 + x1x2^4
    "ex46": (4, "(a+1)*x0^4 + x0^2*x1^2 + x0^2*x1*x2 + x0^2*x2^2 + x1^4 + x1^2*x2^2 + x2^4", [[0, 1], [1, 0]]),
}


def gen_char2_even_builtin(name: str = "ex46") -> FamilyInstance:
    if name not in BUILTIN_CHAR2_EVEN:
        raise InvalidParameters(f"unknown built-in {name!r}; expected one of {', '.join(BUILTIN_CHAR2_EVEN)}")
    q, gtext, B = BUILTIN_CHAR2_EVEN[name]
    K = field_of_order(q)
    inst = gen_char2_even(q, 2, parse_poly(gtext, K, 3), B)
    inst.params["builtin"] = name
    want = [Property("fn_over", q), Property("f10_relation"), Property("smooth"), Property("hessian_zero")]
    inst.asserted = want
    return inst.verify()


BUILTIN_Q_PLUS_2 = {
    "dgz": (2, "x0^4 + x1^4 + x2^4 + x0^2*x1^2 + x0^2*x2^2 + x1^2*x2^2"),
    "ex47_f4": (4, "(a+1)*x0^6 + x1^6 + (a)*x2^6 + x0^4*x1^2 + x0^2*x1^4 + x1^4*x2^2 + x1^2*x2^4"),
    "ex47_f8": (8, "(a^2)*x0^10 + x0^6*x1^4 + x0^4*x1^6 + (a+1)*x1^10 + (a^2+1)*x0^8*x2^2"
                   " + x0^4*x1^4*x2^2 + (a)*x1^8*x2^2 + x0^6*x2^4 + x0^2*x1^4*x2^4 + x1^6*x2^4"
                   " + x0^4*x2^6 + x1^4*x2^6 + (a^2+1)*x0^2*x2^8 + (a)*x1^2*x2^8 + (a)*x2^10"),
}


def _squared(G: HomogPoly) -> HomogPoly:
    terms = {tuple(2 * x for x in e): c for e, c in G.terms.items()}
    return HomogPoly(G.field, G.nvars, 2 * G.degree, terms, check=False)


def gen_q_plus_2(q: int, G: HomogPoly | None = None, builtin: str | None = None) -> FamilyInstance:
    """F = x0 x1 x2 (x0^(q-1) + x1^(q-1) + x2^(q-1)) + G(x0^2, x1^2, x2^2).

    G may be given in the unsquared variables (degree (q+2)/2) or already
    squared (degree q+2, all exponents even).  Smoothness and pointlessness
    are asserted for the built-ins only.
    """
    if builtin is not None:
        if builtin not in BUILTIN_Q_PLUS_2:
            raise InvalidParameters(f"unknown built-in {builtin!r}; expected one of {', '.join(BUILTIN_Q_PLUS_2)}")
        bq, gtext = BUILTIN_Q_PLUS_2[builtin]
        if q is not None and q != bq:
            raise InvalidParameters(f"built-in {builtin} lives over F_{bq}, not F_{q}")
        q = bq
        G = parse_poly(gtext, field_of_order(q), 3)
    K = field_of_order(q)
    if K.p != 2:
        raise WrongCharacteristic(f"needs characteristic 2, got q = {q}")
    if G is None:
        G = HomogPoly.zero(K, 3, q + 2)
    if G.field != K:
        raise FieldMismatch(f"G is over {G.field}, expected {K}")
    if G.nvars != 3:
        raise InvalidParameters("G must be a ternary form")
    if G.degree == (q + 2) // 2 and not G.is_zero() and G.degree != q + 2:
        G2 = _squared(G)
    elif G.degree == q + 2 or G.is_zero():
        if any(x % 2 for e in G.terms for x in e):
            raise InvalidParameters("a pre-squared G must have only even exponents")
        G2 = G if not G.is_zero() else HomogPoly.zero(K, 3, q + 2)
    else:
        raise DegreeMismatch(f"G must have degree {(q + 2) // 2} or {q + 2}, got {G.degree}")
    core = HomogPoly(K, 3, q + 2, {(q, 1, 1): 1, (1, q, 1): 1, (1, 1, q): 1})
    F = core + G2
    asserted = [Property("f10_zero"), Property("fn_over", q), Property("q_plus_2_partials")]
    params = {"G": G2}
    if builtin is not None:
        params["builtin"] = builtin
        asserted += [Property("smooth"), Property("pointless"), Property("not_separated")]
    return FamilyInstance(F, "q-plus-2", q, params, asserted)


def gen_norm_hypersurface(field: FieldSpec, n: int, basis) -> FamilyInstance:
    """prod_i (alpha_0^(q^i) x0 + ... + alpha_n^(q^i) xn) for an F_q-basis of F_{q^(n+1)}."""
    K = field
    q = K.q
    L = extension_of(K, n + 1)
    if len(basis) != n + 1:
        raise NotABasis(f"need {n + 1} elements, got {len(basis)}")
    codes = []
    for b in basis:
        if isinstance(b, FieldElement):
            if b.field.p != L.p or b.field.k != L.k:
                raise FieldMismatch(f"basis element from {b.field}, expected a field of order {L.q}")
            if b.field != L:
                from .gf import embed

                b = embed(b, L)
            codes.append(b.code)
        else:
            codes.append(int(b))
    # Moore matrix: nonzero determinant iff the elements are F_q-independent
    moore = [[L.pow(a, q ** i) for a in codes] for i in range(n + 1)]
    if mat_det(L, moore) == 0:
        raise NotABasis("elements are linearly dependent over F_q")
    G = HomogPoly(L, n + 1, 0, {(0,) * (n + 1): 1}, check=False)
    for i in range(n + 1):
        G = G * HomogPoly.linear(L, moore[i])
    D = descend(G, K)
    if D is None:
        raise VerificationFailure("norm polynomial has coefficients outside F_q")
    return FamilyInstance(D, "norm-pointless", q, {"basis": [L.format_code(c) for c in codes]},
                          [Property("pointless")])


def gen_pointless_diagonal(field: FieldSpec, n: int) -> FamilyInstance:
    """sum x_i^(q-1); pointless is verified by enumeration, not assumed."""
    K = field
    if (n + 1) % K.p == 0:
        raise BadDimension(f"n+1 = {n + 1} is divisible by p = {K.p}")
    terms = {}
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = K.q - 1
        terms[tuple(e)] = 1
    F = HomogPoly(K, n + 1, K.q - 1, terms)
    inst = FamilyInstance(F, "diagonal-pointless", K.q, {"n": n}, [Property("pointless")])
    if not _chk_pointless(inst, None):
        raise VerificationFailure(
            f"sum x_i^(q-1) has F_{K.q}-points for n = {n}: a point with j nonzero coordinates is a zero "
            f"when p | j, and such j <= n+1 exists since n+1 >= p = {K.p}")
    return inst


def gen_separated(G: HomogPoly, H: HomogPoly) -> FamilyInstance:
    """F = G(x_0..x_m) + H(x_{m+1}..x_n).

    When G and H use disjoint variable indices they are added in place;
    otherwise H's variables are shifted past G's.
    """
    if G.field != H.field:
        raise FieldMismatch("G and H are over different fields")
    if G.degree != H.degree:
        raise DegreeMismatch(f"deg G = {G.degree} but deg H = {H.degree}")
    K = G.field
    if not (G.variables() & H.variables()):
        N = max(G.nvars, H.nvars)
        shift = 0
    else:
        N = G.nvars + H.nvars
        shift = G.nvars
    gt = {e + (0,) * (N - G.nvars): c for e, c in G.terms.items()}
    ht = {(0,) * shift + e + (0,) * (N - shift - H.nvars): c for e, c in H.terms.items()}
    F = HomogPoly(K, N, G.degree, gt, check=False) + HomogPoly(K, N, H.degree, ht, check=False)
    return FamilyInstance(F, "separated", K.q, {"G": G, "H": H}, [Property("separated_variables")])


def gen_fermat(q: int, r: int, n: int) -> FamilyInstance:
    """sum x_i^(q^r + ... + q + 1) viewed over F_{q^(r+1)}.

    With Q = q^(r+1), x^Q * x^(q^r + ... + q) = (x^(q^r + ... + 1))^q, so
    F_1,0 = F^q over F_Q.  For r = 1 this is the Hermitian diagonal form.
    """
    if r < 1:
        raise InvalidParameters("need r >= 1")
    K = extension_of(field_of_order(q), r + 1)
    d = sum(q ** i for i in range(r + 1))
    terms = {}
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = d
        terms[tuple(e)] = 1
    F = HomogPoly(K, n + 1, d, terms)
    Q = K.q
    asserted = [Property("fn_over", Q), Property("f10_power", (q, 1, Q)), Property("smooth")]
    if n >= 1:
        asserted.append(Property("separated_variables"))
    return FamilyInstance(F, "fermat", Q, {"q": q, "r": r, "n": n}, asserted)


def _int(params, key, default=None):
    v = params.get(key, default)
    if v is None:
        raise InvalidParameters(f"missing parameter {key!r}")
    return int(v)


def generate(family: str, params: dict) -> FamilyInstance:
    """Build a family member from CLI-style string parameters."""
    if family == "space-filling":
        return gen_space_filling(_int(params, "q"), _int(params, "n", 3))
    if family == "skew-form":
        q = _int(params, "q")
        n = _int(params, "n")
        K = field_of_order(q)
        if "matrix" in params:
            rows = [[int(x) for x in r.split()] for r in str(params["matrix"]).split(";")]
        else:
            if (n + 1) % 2:
                raise OddSize(f"skew form needs n odd, got n = {n}")
            rows = standard_symplectic(n + 1, K)
        if len(rows) != n + 1:
            raise InvalidParameters(f"matrix size {len(rows)} does not match n = {n}")
        return gen_skew_form(rows, K)
    if family == "hermitian":
        q = _int(params, "q")
        K = field_of_order(q)
        if K.k % 2:
            raise NotASquare(f"q = {q} is not a square")
        n = _int(params, "n")
        return gen_hermitian(n, _int(params, "r", n), K)
    if family == "char2-even":
        if "builtin" in params or "G" not in params:
            return gen_char2_even_builtin(params.get("builtin", "ex46"))
        q = _int(params, "q")
        n = _int(params, "n", 2)
        K = field_of_order(q)
        B = [[int(x) for x in r.split()] for r in str(params["B"]).split(";")]
        return gen_char2_even(q, n, parse_poly(params["G"], K, n + 1), B)
    if family == "q-plus-2":
        q = _int(params, "q")
        if "builtin" in params:
            return gen_q_plus_2(q, builtin=params["builtin"])
        K = field_of_order(q)
        G = parse_poly(params["G"], K, 3) if "G" in params else None
        return gen_q_plus_2(q, G)
    if family == "norm-pointless":
        q = _int(params, "q")
        n = _int(params, "n")
        K = field_of_order(q)
        L = extension_of(K, n + 1)
        if "basis" in params:
            basis = [L.parse_code(t) for t in str(params["basis"]).split(",")]
        else:
            # polynomial basis 1, a, a^2, ... of F_{q^(n+1)} over F_q
            basis = [L.pow(L.gen, i) if i else 1 for i in range(n + 1)]
        return gen_norm_hypersurface(K, n, basis)
    if family == "diagonal-pointless":
        return gen_pointless_diagonal(field_of_order(_int(params, "q")), _int(params, "n"))
    if family == "separated":
        q = _int(params, "q")
        K = field_of_order(q)
        G = parse_poly(params["G"], K)
        H = parse_poly(params["H"], K)
        return gen_separated(G, H)
    if family == "fermat":
        return gen_fermat(_int(params, "q"), _int(params, "r", 2), _int(params, "n", 2))
    raise InvalidParameters(f"unknown family {family!r}; expected one of {', '.join(FAMILY_IDS)}")


__all__ = [
    "BUILTIN_CHAR2_EVEN",
    "BUILTIN_Q_PLUS_2",
    "FAMILY_IDS",
    "FamilyInstance",
    "Property",
    "frobenius_form",
    "gen_char2_even",
    "gen_char2_even_builtin",
    "gen_char2_even_n",
    "gen_fermat",
    "gen_hermitian",
    "gen_hermitian_from_matrix",
    "gen_norm_hypersurface",
    "gen_pointless_diagonal",
    "gen_q_plus_2",
    "gen_separated",
    "gen_skew_form",
    "gen_space_filling",
    "generate",
    "hessian_determinant",
    "standard_symplectic",
]
