"""Sparse homogeneous polynomials over a finite field.

A :class:`HomogPoly` maps exponent tuples to nonzero coefficient codes of
its field.  Homogeneity is checked at construction, and the zero polynomial
keeps a nominal degree.  Terms are ordered by graded reverse lexicographic
order, which fixes both the printed form and the division algorithm.
"""

from __future__ import annotations

import heapq
import re
from math import comb

from . import upoly
from .errors import (
    CoefficientNotInField,
    DegreeOverflow,
    DimensionMismatch,
    FieldMismatch,
    IncompatibleFields,
    IndexOutOfRange,
    LengthMismatch,
    NotHomogeneous,
    PolySyntaxError,
    UnknownVariable,
    ZeroDivisor,
    ZeroForm,
)
from .gf import FieldElement, FieldSpec, embed_field, parse_field_header

MAX_DEGREE = 1 << 31


def grevlex_key(exp):
    """Sort key: ascending key order is descending grevlex order."""
    return tuple(reversed(exp))


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of degree d in nvars variables, descending grevlex."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    if nvars == 0:
        return [()] if d == 0 else []
    rec((), d, nvars)
    out.sort(key=grevlex_key)
    return out


def num_monomials(nvars: int, d: int) -> int:
    return comb(nvars + d - 1, d)


def _code(field: FieldSpec, c) -> int:
    """Coefficient to code: FieldElements must match the field, plain integers
    in [0, q) are element codes and negative integers are integer residues."""
    if isinstance(c, FieldElement):
        if c.field != field:
            raise FieldMismatch(f"coefficient from {c.field} in polynomial over {field}")
        return c.code
    c = int(c)
    if c < 0:
        return field.from_int(c)
    if c >= field.q:
        raise CoefficientNotInField(f"code {c} is not an element of {field}")
    return c


class HomogPoly:
    """Immutable homogeneous polynomial; ``terms`` maps exponent tuples to codes."""

    __slots__ = ("field", "nvars", "degree", "terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, degree: int, terms=None, check: bool = True):
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self._hash = None
        if terms is None:
            terms = {}
        if check:
            clean = {}
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise LengthMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
                if sum(e) != degree or min(e, default=0) < 0:
                    raise NotHomogeneous(f"monomial {e} does not have degree {degree}")
                c = _code(field, c)
                if c:
                    clean[e] = c
            terms = clean
            if degree > MAX_DEGREE:
                raise DegreeOverflow(f"degree {degree} exceeds {MAX_DEGREE}")
        self.terms = terms

    # ---- constructors
    @classmethod
    def zero(cls, field, nvars, degree=0):
        return cls(field, nvars, degree, {}, check=False)

    @classmethod
    def from_dict(cls, field, nvars, terms, degree=None):
        """Build from a dict of exponents to coefficients; the degree is inferred when possible."""
        if degree is None:
            degs = {sum(e) for e in terms}
            if len(degs) > 1:
                raise NotHomogeneous(f"terms of degrees {sorted(degs)}")
            degree = degs.pop() if degs else 0
        return cls(field, nvars, degree, terms)

    @classmethod
    def monomial(cls, field, nvars, exp, coeff=1):
        return cls(field, nvars, sum(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, 1, {tuple(e): 1}, check=False)

    @classmethod
    def linear(cls, field, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, 1, terms)

    # ---- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exp), 0))

    def items(self):
        """(exponent, FieldElement) pairs in descending grevlex order."""
        return [(e, FieldElement(self.field, self.terms[e])) for e in self.sorted_exponents()]

    def sorted_exponents(self):
        return sorted(self.terms, key=grevlex_key)

    def leading_term(self):
        if not self.terms:
            return None
        e = min(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def variables(self) -> set[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    # ---- arithmetic
    def _compatible(self, other):
        if not isinstance(other, HomogPoly):
            raise TypeError(f"expected HomogPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"polynomials over {self.field} and {other.field}")
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _sum(self, other, negate):
        self._compatible(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return -other if negate else other
        if self.degree != other.degree:
            raise NotHomogeneous(f"adding degrees {self.degree} and {other.degree}")
        K = self.field
        op = K.sub if negate else K.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = op(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return HomogPoly(K, self.nvars, self.degree, out, check=False)

    def __add__(self, other):
        return self._sum(other, False)

    def __sub__(self, other):
        return self._sum(other, True)

    def __neg__(self):
        K = self.field
        return HomogPoly(K, self.nvars, self.degree, {e: K.neg(c) for e, c in self.terms.items()}, check=False)

    def scale(self, c) -> HomogPoly:
        """Multiply by a FieldElement, or by an integer (as an integer, reduced mod p)."""
        K = self.field
        c = K.from_int(c) if isinstance(c, int) else _code(K, c)
        if c == 0:
            return HomogPoly.zero(K, self.nvars, self.degree)
        if c == 1:
            return self
        return HomogPoly(K, self.nvars, self.degree, {e: K.mul(x, c) for e, x in self.terms.items()}, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._compatible(other)
        K = self.field
        deg = self.degree + other.degree
        if self.is_zero() or other.is_zero():
            return HomogPoly.zero(K, self.nvars, deg)
        out: dict = {}
        add, mul = K.add, K.mul
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        bt = list(b.terms.items())
        for e1, c1 in a.terms.items():
            for e2, c2 in bt:
                e = tuple(x + y for x, y in zip(e1, e2))
                v = add(out.get(e, 0), mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return HomogPoly(K, self.nvars, deg, out, check=False)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        return poly_power(self, e)

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.field != other.field or self.nvars != other.nvars:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"HomogPoly({format_poly(self)!r}, {self.field!r})"

    def __str__(self):
        return format_poly(self)

    def __call__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = coords[0]
        return evaluate(self, coords)


# ---------------------------------------------------------------- printing

def format_monomial(exp) -> str:
    parts = []
    for i, x in enumerate(exp):
        if x == 1:
            parts.append(f"x{i}")
        elif x > 1:
            parts.append(f"x{i}^{x}")
    return "*".join(parts)


def format_coefficient(field: FieldSpec, code: int) -> str:
    text = field.format_code(code)
    return text if code < field.p else f"({text})"


def format_poly(F: HomogPoly) -> str:
    """Canonical text: descending grevlex terms joined by ' + '."""
    if F.is_zero():
        return "0"
    K = F.field
    out = []
    for e in F.sorted_exponents():
        c = F.terms[e]
        mon = format_monomial(e)
        if not mon:
            out.append(format_coefficient(K, c))
        elif c == 1:
            out.append(mon)
        else:
            out.append(f"{format_coefficient(K, c)}*{mon}")
    return " + ".join(out)


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))|(?P<num>\d+)|(?P<op>[-+*^()])|(?P<word>[A-Za-z_]\w*))")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.group("var") is not None:
            toks.append(("var", int(m.group("idx")), start, m.end()))
        elif m.group("num") is not None:
            toks.append(("num", int(m.group("num")), start, m.end()))
        elif m.group("op") is not None:
            toks.append(("op", m.group("op"), start, m.end()))
        else:
            toks.append(("word", m.group("word"), start, m.end()))
        pos = m.end()
    return toks


def parse_poly(text: str, field: FieldSpec, nvars: int | None = None) -> HomogPoly:
    """Parse polynomial text (see README for the grammar).

    When ``nvars`` is omitted it is one more than the largest variable index.
    """
    toks = _tokenize(text)
    if not toks:
        raise PolySyntaxError("empty polynomial", 0)
    K = field
    terms: dict = {}
    i = 0
    sign = 1
    expect_term = True
    max_idx = -1
    parsed = []
    while i < len(toks):
        kind, val, start, end = toks[i]
        if kind == "op" and val in "+-":
            if not expect_term:
                expect_term = True
                sign = 1 if val == "+" else -1
            elif val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            raise PolySyntaxError(f"expected '+' or '-' before {text[start:end]!r}", start)
        coeff = 1
        have_coeff = False
        if kind == "num":
            coeff = K.from_int(val)
            have_coeff = True
            i += 1
        elif kind == "op" and val == "(":
            j = i + 1
            while j < len(toks) and not (toks[j][0] == "op" and toks[j][1] in "()"):
                j += 1
            if j >= len(toks) or toks[j][1] != ")":
                raise PolySyntaxError("unbalanced parenthesis in coefficient", start)
            inner_start = toks[i][3]
            inner = text[inner_start:toks[j][2]]
            if re.search(r"x\d", inner):
                raise PolySyntaxError("variables are not allowed inside a coefficient", inner_start)
            if K.k == 1 and "a" in inner:
                raise CoefficientNotInField(
                    f"generator 'a' used over the prime field F_{K.p} (column {inner_start + 1})")
            coeff = K.parse_code(inner, offset=inner_start)
            have_coeff = True
            i = j + 1
        exp = {}
        need_factor = not have_coeff
        if have_coeff and i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
            i += 1
            need_factor = True
        while i < len(toks):
            kind, val, start, end = toks[i]
            if kind == "word":
                raise UnknownVariable(f"unknown variable {val!r} at column {start + 1}")
            if kind != "var":
                break
            if nvars is not None and val >= nvars:
                raise UnknownVariable(f"variable x{val} out of range for {nvars} variables (column {start + 1})")
            i += 1
            power = 1
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "^":
                if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                    raise PolySyntaxError("expected exponent after '^'", toks[i][2])
                power = toks[i + 1][1]
                i += 2
            exp[val] = exp.get(val, 0) + power
            max_idx = max(max_idx, val)
            need_factor = False
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                need_factor = True
                continue
            break
        if need_factor:
            pos = toks[i][2] if i < len(toks) else len(text)
            if i < len(toks) and toks[i][0] == "word":
                raise UnknownVariable(f"unknown variable {toks[i][1]!r} at column {pos + 1}")
            raise PolySyntaxError("expected a variable", pos)
        if sign < 0:
            coeff = K.neg(coeff)
        parsed.append((exp, coeff, start))
        expect_term = False
        sign = 1
    if expect_term:
        raise PolySyntaxError("dangling operator at end of input", toks[-1][2])
    if nvars is None:
        nvars = max_idx + 1 if max_idx >= 0 else 1
    degrees = set()
    for exp, coeff, start in parsed:
        e = [0] * nvars
        for v, pw in exp.items():
            e[v] = pw
        e = tuple(e)
        degrees.add(sum(e))
        terms[e] = K.add(terms.get(e, 0), coeff)
    if len(degrees) > 1:
        raise NotHomogeneous(f"terms of degrees {sorted(degrees)} in {text.strip()!r}")
    degree = degrees.pop()
    terms = {e: c for e, c in terms.items() if c}
    return HomogPoly(K, nvars, degree, terms, check=False)


def read_poly_file(text: str) -> tuple[FieldSpec, int, list[HomogPoly]]:
    """Parse the file format: a header ``p=.. k=.. mod=[..] n=..`` then one polynomial per line.

    Blank lines and lines starting with ``#`` are skipped.  Returns (field, n, polys).
    """
    lines = text.splitlines()
    header_idx = None
    for idx, line in enumerate(lines):
        if line.strip() and not line.strip().startswith("#"):
            header_idx = idx
            break
    if header_idx is None:
        raise PolySyntaxError("missing header line", 0, line=1)
    try:
        field, extra = parse_field_header(lines[header_idx])
    except PolySyntaxError as exc:
        raise PolySyntaxError(str(exc).split(" (")[0], exc.pos, line=header_idx + 1) from None
    if "n" not in extra:
        raise PolySyntaxError("header needs n=<dimension>", 0, line=header_idx + 1)
    n = int(extra["n"])
    polys = []
    for idx in range(header_idx + 1, len(lines)):
        line = lines[idx].strip()
        if not line or line.startswith("#"):
            continue
        try:
            polys.append(parse_poly(lines[idx], field, n + 1))
        except PolySyntaxError as exc:
            msg = str(exc).rsplit(" (", 1)[0]
            raise PolySyntaxError(msg, exc.pos, line=idx + 1) from None
        except (UnknownVariable, CoefficientNotInField) as exc:
            raise type(exc)(f"line {idx + 1}: {exc}") from None
    return field, n, polys


def write_poly_file(polys, field: FieldSpec | None = None, n: int | None = None) -> str:
    polys = list(polys)
    if field is None:
        field = polys[0].field
    if n is None:
        n = polys[0].nvars - 1
    lines = [f"{field.header()} n={n}"]
    lines.extend(format_poly(F) for F in polys)
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- operations

def partial_derivative(F: HomogPoly, i: int) -> HomogPoly:
    if not 0 <= i < F.nvars:
        raise IndexOutOfRange(f"variable index {i} outside 0..{F.nvars - 1}")
    K = F.field
    out = {}
    for e, c in F.terms.items():
        m = e[i] % K.p
        if m == 0:
            continue
        v = K.scalar(m, c)
        if v:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = v
    return HomogPoly(K, F.nvars, max(F.degree - 1, 0), out, check=False)


def gradient(F: HomogPoly) -> list[HomogPoly]:
    return [partial_derivative(F, i) for i in range(F.nvars)]


class EulerVerdict:
    def __init__(self, holds, lhs, rhs):
        self.holds = holds
        self.lhs = lhs
        self.rhs = rhs

    def __bool__(self):
        return self.holds

    def __repr__(self):
        return f"EulerVerdict(holds={self.holds}, lhs={self.lhs}, rhs={self.rhs})"


def euler_check(F: HomogPoly) -> EulerVerdict:
    """Compare sum_i x_i dF/dx_i with d*F."""
    K = F.field
    lhs = HomogPoly.zero(K, F.nvars, F.degree)
    for i in range(F.nvars):
        lhs = lhs + HomogPoly.variable(K, F.nvars, i) * partial_derivative(F, i)
    rhs = F.scale(F.degree)
    return EulerVerdict(lhs == rhs, lhs, rhs)


def evaluate_codes(F: HomogPoly, coords, target: FieldSpec | None = None) -> int:
    """Evaluate at a tuple of codes of ``target`` (default: F's field)."""
    K = target or F.field
    if K != F.field:
        emb = embed_field(F.field, K).images
    else:
        emb = None
    acc = 0
    mul, add, pw = K.mul, K.add, K.pow
    for e, c in F.terms.items():
        v = emb[c] if emb else c
        for x, k in zip(coords, e):
            if k:
                if x == 0:
                    v = 0
                    break
                v = mul(v, pw(x, k))
        if v:
            acc = add(acc, v)
    return acc


def evaluate(F: HomogPoly, coords) -> FieldElement:
    if len(coords) != F.nvars:
        raise LengthMismatch(f"{len(coords)} coordinates for {F.nvars} variables")
    target = None
    codes = []
    for x in coords:
        if isinstance(x, FieldElement):
            if target is None:
                target = x.field
            elif x.field != target:
                raise FieldMismatch(f"coordinates from {target} and {x.field}")
    if target is None:
        target = F.field
    for x in coords:
        codes.append(x.code if isinstance(x, FieldElement) else target.from_int(x))
    if target != F.field:
        if target.p != F.field.p or target.k % F.field.k:
            raise FieldMismatch(f"cannot evaluate a polynomial over {F.field} at points of {target}")
    return FieldElement(target, evaluate_codes(F, codes, target))


def _matrix_codes(field, M):
    return [[_code(field, c) for c in row] for row in M]


def substitute_linear(F: HomogPoly, M, out_nvars: int | None = None) -> HomogPoly:
    """Substitute x_i <- sum_j M[i][j] y_j; M has F.nvars rows and out_nvars columns."""
    K = F.field
    rows = _matrix_codes(K, M)
    if len(rows) != F.nvars:
        raise DimensionMismatch(f"matrix has {len(rows)} rows, polynomial has {F.nvars} variables")
    if out_nvars is None:
        out_nvars = len(rows[0]) if rows else 0
    if any(len(r) != out_nvars for r in rows):
        raise DimensionMismatch(f"matrix rows must have {out_nvars} entries")
    forms = []
    for r in rows:
        terms = {}
        for j, c in enumerate(r):
            if c:
                e = [0] * out_nvars
                e[j] = 1
                terms[tuple(e)] = c
        forms.append(HomogPoly(K, out_nvars, 1, terms, check=False))
    cache: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = poly_power(forms[i], k)
        return cache[key]

    result = HomogPoly.zero(K, out_nvars, F.degree)
    for e, c in F.terms.items():
        term = HomogPoly(K, out_nvars, 0, {(0,) * out_nvars: c}, check=False)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
                if term.is_zero():
                    break
        if not term.is_zero():
            result = result + term
    return result


class DivisionVerdict:
    def __init__(self, divides, quotient=None, remainder_lead=None):
        self.divides = divides
        self.quotient = quotient
        self.remainder_lead = remainder_lead

    def __bool__(self):
        return self.divides

    def __iter__(self):
        return iter((self.divides, self.quotient))

    def __repr__(self):
        return f"DivisionVerdict(divides={self.divides}, quotient={self.quotient})"


def poly_divides(F: HomogPoly, G: HomogPoly) -> DivisionVerdict:
    """Decide whether F divides G by leading-term reduction; return the quotient when it does."""
    if F.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    F._compatible(G)
    K = F.field
    qdeg = G.degree - F.degree
    if G.is_zero():
        return DivisionVerdict(True, HomogPoly.zero(K, F.nvars, max(qdeg, 0)))
    if qdeg < 0:
        return DivisionVerdict(False)
    lead_e, lead_c = F.leading_term()
    inv_lead = K.inv(lead_c)
    f_rest = [(e, c) for e, c in F.terms.items() if e != lead_e]
    rem = dict(G.terms)
    heap = [grevlex_key(e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    mul, sub = K.mul, K.sub
    nv = F.nvars
    while rem:
        key = heapq.heappop(heap)
        e = tuple(reversed(key))
        c = rem.get(e)
        if c is None:
            continue
        shift = tuple(a - b for a, b in zip(e, lead_e))
        if min(shift) < 0:
            return DivisionVerdict(False, remainder_lead=(e, c))
        t = mul(c, inv_lead)
        quot[shift] = t
        del rem[e]
        for fe, fc in f_rest:
            ne = tuple(shift[i] + fe[i] for i in range(nv))
            old = rem.get(ne)
            v = sub(old or 0, mul(t, fc))
            if v:
                if old is None:
                    heapq.heappush(heap, grevlex_key(ne))
                rem[ne] = v
            elif old is not None:
                del rem[ne]
    return DivisionVerdict(True, HomogPoly(K, nv, qdeg, quot, check=False))


class PthPowerVerdict:
    def __init__(self, is_power, root=None):
        self.is_power = is_power
        self.root = root

    def __bool__(self):
        return self.is_power

    def __repr__(self):
        return f"PthPowerVerdict(is_power={self.is_power}, root={self.root})"


def is_pth_power(F: HomogPoly) -> PthPowerVerdict:
    K = F.field
    p = K.p
    if any(x % p for e in F.terms for x in e):
        return PthPowerVerdict(False)
    if F.degree % p:
        # only the zero polynomial can reach here
        return PthPowerVerdict(True, HomogPoly.zero(K, F.nvars, F.degree // p))
    root = {tuple(x // p for x in e): K.frob(c, K.k - 1) for e, c in F.terms.items()}
    return PthPowerVerdict(True, HomogPoly(K, F.nvars, F.degree // p, root, check=False))


def frobenius_twist(F: HomogPoly, j: int) -> HomogPoly:
    """F^(p^j), computed termwise: coefficients to the p^j and exponents times p^j."""
    if j == 0:
        return F
    K = F.field
    m = K.p ** j
    deg = F.degree * m
    if deg > MAX_DEGREE:
        raise DegreeOverflow(f"degree {deg} exceeds {MAX_DEGREE}")
    terms = {tuple(x * m for x in e): K.frob(c, j) for e, c in F.terms.items()}
    return HomogPoly(K, F.nvars, deg, terms, check=False)


def poly_power(F: HomogPoly, e: int) -> HomogPoly:
    if e < 0:
        raise ValueError("negative exponent")
    K = F.field
    if F.degree * e > MAX_DEGREE:
        raise DegreeOverflow(f"degree {F.degree * e} exceeds {MAX_DEGREE}")
    if e == 0:
        return HomogPoly(K, F.nvars, 0, {(0,) * F.nvars: 1}, check=False)
    s = 0
    while e % K.p == 0:
        e //= K.p
        s += 1
    result = None
    base = F
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return frobenius_twist(result, s)


def change_field(F: HomogPoly, target: FieldSpec) -> HomogPoly:
    """Base change of F to an extension field."""
    if target == F.field:
        return F
    emb = embed_field(F.field, target).images
    return HomogPoly(target, F.nvars, F.degree, {e: emb[c] for e, c in F.terms.items()}, check=False)


def descend(F: HomogPoly, subfield: FieldSpec) -> HomogPoly | None:
    """F viewed over ``subfield`` when all coefficients lie there, else None."""
    if subfield == F.field:
        return F
    try:
        emb = embed_field(subfield, F.field)
    except IncompatibleFields:
        return None
    out = {}
    for e, c in F.terms.items():
        pre = emb.lift(c)
        if pre is None:
            return None
        out[e] = pre
    return HomogPoly(subfield, F.nvars, F.degree, out, check=False)


def restrict_to_line(F: HomogPoly, P, Q) -> HomogPoly:
    """The binary form f(s, t) = F(s*P + t*Q) for code tuples P, Q over F's field."""
    M = [[P[i], Q[i]] for i in range(F.nvars)]
    return substitute_linear(F, M, 2)


# ---------------------------------------------------------- binary forms

def dehomogenize_binary(f: HomogPoly) -> list[int]:
    """f(x, 1) as a univariate code list (constant term first)."""
    if f.nvars != 2:
        raise DimensionMismatch("binary form expected")
    out = [0] * (f.degree + 1)
    for (a, b), c in f.terms.items():
        out[a] = c
    return upoly.trim(out)


def binary_squarefree(f: HomogPoly) -> bool:
    """True iff the binary form has no repeated root over the algebraic closure."""
    if f.nvars != 2:
        raise DimensionMismatch("binary form expected")
    if f.is_zero():
        raise ZeroForm("squarefreeness of the zero form")
    K = f.field
    g = dehomogenize_binary(f)
    if f.degree - (len(g) - 1) > 1:
        return False
    if len(g) <= 2:
        return True
    dg = upoly.derivative(K, g)
    if not dg:
        return False
    return len(upoly.gcd(K, g, dg)) == 1


def binary_root_profile(f: HomogPoly) -> list[tuple[int, int]]:
    """(residue degree over f's field, multiplicity) for each closed point of {f = 0} in P^1."""
    if f.is_zero():
        raise ZeroForm("root profile of the zero form")
    K = f.field
    g = dehomogenize_binary(f)
    prof = upoly.root_profile(K, g)
    inf = f.degree - (len(g) - 1)
    if inf:
        prof.append((1, inf))
    return sorted(prof)


def univariate_gcd(f, g, field=None):
    return upoly.univariate_gcd(f, g, field)
