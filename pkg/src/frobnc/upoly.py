"""Dense univariate polynomials over a FieldSpec.

A polynomial is a list of element codes, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).  These helpers back the
binary-form utilities: squarefree tests, gcds, and root-degree profiles
of restrictions to lines.
"""

from __future__ import annotations

from .errors import BothZero, DivisionByZero
from .gf import FieldElement, FieldSpec


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    return len(f) - 1


def add(K: FieldSpec, f, g):
    n = max(len(f), len(g))
    out = [K.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return trim(out)


def sub(K: FieldSpec, f, g):
    n = max(len(f), len(g))
    out = [K.sub(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
    return trim(out)


def scale(K: FieldSpec, f, c):
    if c == 0:
        return []
    return [K.mul(x, c) for x in f]


def mul(K: FieldSpec, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x == 0:
            continue
        for j, y in enumerate(g):
            if y:
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return trim(out)


def divmod_(K: FieldSpec, f, g):
    if not g:
        raise DivisionByZero("division by the zero polynomial")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], trim(r)
    quot = [0] * (len(r) - dg)
    inv_lead = K.inv(g[-1])
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if c == 0:
            continue
        c = K.mul(c, inv_lead)
        shift = top - dg
        quot[shift] = c
        for j, gj in enumerate(g):
            if gj:
                r[shift + j] = K.sub(r[shift + j], K.mul(c, gj))
    return trim(quot), trim(r[:dg])


def rem(K, f, g):
    return divmod_(K, f, g)[1]


def monic(K: FieldSpec, f):
    if not f:
        return []
    return scale(K, f, K.inv(f[-1]))


def gcd(K: FieldSpec, f, g):
    """Monic gcd by Euclid."""
    f, g = trim(list(f)), trim(list(g))
    if not f and not g:
        raise BothZero("gcd of two zero polynomials")
    while g:
        f, g = g, rem(K, f, g)
    return monic(K, f)


def derivative(K: FieldSpec, f):
    return trim([K.scalar(i, f[i]) for i in range(1, len(f))])


def powmod(K: FieldSpec, f, e: int, m):
    result = [1]
    base = rem(K, f, m)
    while e:
        if e & 1:
            result = rem(K, mul(K, result, base), m)
        e >>= 1
        if e:
            base = rem(K, mul(K, base, base), m)
    return result


def pth_root(K: FieldSpec, f):
    """Root of a polynomial whose exponents are all divisible by p."""
    p = K.p
    out = []
    for i in range(0, len(f), p):
        out.append(K.frob(f[i], K.k - 1) if f[i] else 0)
    return trim(out)


def squarefree_decomposition(K: FieldSpec, f) -> dict[int, list]:
    """Map multiplicity -> monic squarefree factor, valid in characteristic p."""
    f = monic(K, f)
    result: dict[int, list] = {}
    if len(f) <= 1:
        return result

    def put(m, fac):
        if len(fac) > 1:
            result[m] = mul(K, result[m], fac) if m in result else fac

    c = gcd(K, f, derivative(K, f))
    w = divmod_(K, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(K, w, c)
        put(i, monic(K, divmod_(K, w, y)[0]))
        i += 1
        w = y
        c = divmod_(K, c, y)[0]
    if len(c) > 1:
        for m, fac in squarefree_decomposition(K, pth_root(K, c)).items():
            put(m * K.p, fac)
    return result


def distinct_degree(K: FieldSpec, f) -> dict[int, list]:
    """For squarefree monic f: map j -> product of its irreducible factors of degree j."""
    out = {}
    g = monic(K, f)
    x = [0, 1]
    h = x
    j = 0
    while len(g) - 1 >= 2 * (j + 1):
        j += 1
        h = powmod(K, h, K.q, g)
        fac = gcd(K, sub(K, h, x), g)
        if len(fac) > 1:
            out[j] = fac
            g = divmod_(K, g, fac)[0]
            h = rem(K, h, g)
    if len(g) > 1:
        out[len(g) - 1] = g
    return out


def root_profile(K: FieldSpec, f) -> list[tuple[int, int]]:
    """(residue degree, multiplicity) for each closed point of the zero set of f, sorted."""
    prof = []
    for m, fac in squarefree_decomposition(K, f).items():
        for j, prod in distinct_degree(K, fac).items():
            prof.extend([(j, m)] * ((len(prod) - 1) // j))
    return sorted(prof)


def evaluate(K: FieldSpec, f, x):
    acc = 0
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def _codes(seq, field):
    out = []
    for c in seq:
        if isinstance(c, FieldElement):
            if field is None:
                field = c.field
            out.append(c.code)
        else:
            out.append(c)
    return out, field


def univariate_gcd(f, g, field: FieldSpec | None = None) -> list[FieldElement]:
    """Monic gcd of two univariate polynomials given as coefficient sequences
    (constant term first; FieldElements, or integer codes with ``field``)."""
    fc, field = _codes(f, field)
    gc, field = _codes(g, field)
    if field is None:
        raise ValueError("field must be given when no FieldElement is present")
    return [FieldElement(field, c) for c in gcd(field, fc, gc)]
