"""Points, lines and hyperplanes of P^n over a finite field.

Points are normalised so that the first nonzero coordinate is 1.  The
canonical enumeration order compares coordinate vectors as little-endian
base-q integers, so for P^1(F_2) the order is (1:0), (0:1), (1:1).
Bulk enumerations are returned as numpy code arrays; :class:`ProjPoint`
wraps a single point for the public API.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import (
    DimensionMismatch,
    EqualPoints,
    FieldMismatch,
    PointNotOnHypersurface,
    PolySyntaxError,
    SingularPoint,
)
from .gf import FieldElement, FieldSpec, embed_field
from .mpoly import HomogPoly, evaluate_codes, format_coefficient, partial_derivative


def normalize_codes(K: FieldSpec, coords) -> tuple[int, ...]:
    coords = tuple(int(c) for c in coords)
    for c in coords:
        if c:
            if c == 1:
                return coords
            inv = K.inv(c)
            return tuple(K.mul(x, inv) for x in coords)
    raise ValueError("the zero vector is not a projective point")


def _to_codes(K, coords):
    out = []
    for c in coords:
        if isinstance(c, FieldElement):
            if c.field != K:
                raise FieldMismatch(f"coordinate from {c.field}, expected {K}")
            out.append(c.code)
        else:
            c = int(c)
            if c >= K.q:
                raise ValueError(f"code {c} is not an element of {K}")
            out.append(K.from_int(c) if c < 0 else c)
    return out


class ProjPoint:
    """A normalised point of P^n over ``field``.

    Coordinates may be FieldElements or integer codes (negative integers are
    read as integer residues, so ``-1`` means the additive inverse of 1).
    """

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords):
        self.field = field
        self.coords = normalize_codes(field, _to_codes(field, coords))

    @classmethod
    def from_elements(cls, coords):
        return cls(coords[0].field, coords)

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __str__(self):
        return "(" + " : ".join(format_coefficient(self.field, c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"

    def is_rational(self, q: int) -> bool:
        return frobenius_point(self, q) == self


def parse_point(text: str, field: FieldSpec) -> ProjPoint:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise PolySyntaxError("point must look like (c0 : c1 : ...)", 0)
    parts = body[1:-1].split(":")
    coords = []
    for part in parts:
        part = part.strip()
        if part.startswith("(") and part.endswith(")"):
            part = part[1:-1]
        coords.append(field.parse_code(part))
    return ProjPoint(field, coords)


def num_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


@functools.lru_cache(maxsize=64)
def _point_array(n: int, field: FieldSpec) -> np.ndarray:
    q = field.q
    blocks = []
    for j in range(n + 1):
        free = n - j
        if free:
            grid = np.indices((q,) * free, dtype=np.int64).reshape(free, -1).T
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        blk = np.zeros((grid.shape[0], n + 1), dtype=np.int64)
        blk[:, j] = 1
        blk[:, j + 1:] = grid
        blocks.append(blk)
    pts = np.concatenate(blocks, axis=0)
    order = np.lexsort(tuple(pts[:, i] for i in range(n + 1)))
    pts = pts[order]
    pts.setflags(write=False)
    return pts


def point_array(n: int, field: FieldSpec, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Codes of the points of P^n(field) in canonical order, rows start..stop."""
    return _point_array(n, field)[start:stop]


def point_ranges(n: int, field: FieldSpec, parts: int) -> list[tuple[int, int]]:
    """Split the canonical enumeration into ``parts`` contiguous index ranges."""
    total = num_points(n, field.q)
    bounds = [total * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def enumerate_points(n: int, field: FieldSpec, start: int = 0, stop: int | None = None) -> list[ProjPoint]:
    out = []
    for row in point_array(n, field, start, stop):
        P = ProjPoint.__new__(ProjPoint)
        P.field = field
        P.coords = tuple(int(x) for x in row)
        out.append(P)
    return out


def _rref(K: FieldSpec, rows):
    """Reduced row echelon form of a list of code rows; returns (rows, pivots)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        A[r] = [K.mul(x, inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]], pivots


class ProjLine:
    """A line of P^n stored as the RREF basis of its 2-dimensional row space."""

    __slots__ = ("field", "rows", "pivots")

    def __init__(self, field: FieldSpec, rows, _canonical=False):
        self.field = field
        if _canonical:
            self.rows = tuple(tuple(r) for r in rows)
            self.pivots = tuple(next(i for i, x in enumerate(r) if x) for r in rows)
            return
        red, piv = _rref(field, [_to_codes(field, r) for r in rows])
        if len(red) != 2:
            raise EqualPoints("rows do not span a line")
        self.rows = tuple(red)
        self.pivots = tuple(piv)

    @property
    def n(self):
        return len(self.rows[0]) - 1

    def points(self, field: FieldSpec | None = None) -> list[ProjPoint]:
        """Points of the line over ``field`` (default: the line's own field)."""
        K = field or self.field
        r0, r1 = self.rows
        if K != self.field:
            img = embed_field(self.field, K).images
            r0 = tuple(img[c] for c in r0)
            r1 = tuple(img[c] for c in r1)
        out = [ProjPoint(K, r1)]
        for s in range(K.q):
            out.append(ProjPoint(K, [K.add(x, K.mul(s, y)) for x, y in zip(r0, r1)]))
        return out

    def point_codes(self) -> np.ndarray:
        """Codes of the q+1 points over the line's own field (unnormalised is fine for zero tests)."""
        K = self.field
        r0 = np.array(self.rows[0], dtype=np.int64)
        r1 = np.array(self.rows[1], dtype=np.int64)
        from .vecfield import vec_field

        V = vec_field(K)
        s = np.arange(K.q, dtype=np.int64)[:, None]
        pts = V.add(r0[None, :], V.mul(s, r1[None, :]))
        return np.concatenate([r1[None, :], pts], axis=0)

    def contains(self, P: ProjPoint) -> bool:
        r0, r1 = (_lift(self.field, r, P.field) for r in self.rows)
        return len(_rref(P.field, [r0, r1, P.coords])[0]) == 2

    def parametrization(self):
        """Matrix M with x_i = M[i][0] s + M[i][1] t, for substitute_linear."""
        return [[self.rows[0][i], self.rows[1][i]] for i in range(self.n + 1)]

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __str__(self):
        f = self.field
        return "[" + "; ".join(" ".join(format_coefficient(f, c) for c in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"ProjLine{self}"


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_lines(n: int, field: FieldSpec) -> list[ProjLine]:
    """All lines of P^n(field), each once, as RREF bases ordered by pivot pair."""
    if n < 1:
        raise DimensionMismatch("lines need n >= 1")
    q = field.q
    out = []
    for i, j in itertools.combinations(range(n + 1), 2):
        free0 = [c for c in range(i + 1, n + 1) if c != j]
        free1 = list(range(j + 1, n + 1))
        for v0 in itertools.product(range(q), repeat=len(free0)):
            r0 = [0] * (n + 1)
            r0[i] = 1
            for c, x in zip(free0, v0):
                r0[c] = x
            for v1 in itertools.product(range(q), repeat=len(free1)):
                r1 = [0] * (n + 1)
                r1[j] = 1
                for c, x in zip(free1, v1):
                    r1[c] = x
                out.append(ProjLine(field, (r0, r1), _canonical=True))
    return out


def frobenius_point(P: ProjPoint, q: int) -> ProjPoint:
    """Coordinatewise q-th power, renormalised."""
    K = P.field
    return ProjPoint(K, [K.pow(c, q) for c in P.coords])


class Hyperplane:
    """Hyperplane sum_i h_i x_i = 0 with normalised dual coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords):
        self.field = field
        self.coords = normalize_codes(field, _to_codes(field, coords))

    def contains(self, P: ProjPoint) -> bool:
        return point_on_hyperplane(P, self)

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(("H", self.field, self.coords))

    def __str__(self):
        return "{" + " + ".join(
            f"{format_coefficient(self.field, c)}*x{i}" if c != 1 else f"x{i}"
            for i, c in enumerate(self.coords) if c) + " = 0}"

    def __repr__(self):
        return f"Hyperplane{self}"


def _lift(field: FieldSpec, coords, K: FieldSpec):
    if field == K:
        return coords
    img = embed_field(field, K).images
    return tuple(img[c] for c in coords)


def point_on_hyperplane(P: ProjPoint, H: Hyperplane) -> bool:
    if len(P.coords) != len(H.coords):
        raise DimensionMismatch("point and hyperplane live in different spaces")
    K = P.field if P.field.k >= H.field.k else H.field
    acc = 0
    for x, h in zip(_lift(P.field, P.coords, K), _lift(H.field, H.coords, K)):
        acc = K.add(acc, K.mul(x, h))
    return acc == 0


def tangent_hyperplane(F: HomogPoly, P: ProjPoint) -> Hyperplane:
    K = P.field
    if evaluate_codes(F, P.coords, K) != 0:
        raise PointNotOnHypersurface(f"F does not vanish at {P}")
    grad = [evaluate_codes(partial_derivative(F, i), P.coords, K) for i in range(F.nvars)]
    if not any(grad):
        raise SingularPoint(f"all partial derivatives vanish at {P}")
    return Hyperplane(K, grad)


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if P.field != Q.field:
        raise FieldMismatch("points over different fields")
    if P == Q:
        raise EqualPoints(f"{P} = {Q}")
    return ProjLine(P.field, (P.coords, Q.coords))


def lines_through_point(P: ProjPoint, n: int | None = None, field: FieldSpec | None = None) -> list[ProjLine]:
    """All lines of P^n(field) through P, in order of first appearance along the point enumeration."""
    K = field or P.field
    n = P.n if n is None else n
    seen = set()
    out = []
    for row in point_array(n, K):
        coords = tuple(int(x) for x in row)
        if coords == P.coords:
            continue
        L = ProjLine(K, (P.coords, coords))
        if L not in seen:
            seen.add(L)
            out.append(L)
    return out
