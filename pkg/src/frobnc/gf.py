"""Finite fields F_{p^k} given by an explicit irreducible modulus.

Elements are stored as integer codes: the residue class
c_0 + c_1 a + ... + c_{k-1} a^{k-1} has code c_0 + c_1 p + ... + c_{k-1} p^{k-1},
so code order is the canonical enumeration order (zero first, then 1, a, a+1, ...).
All arithmetic on codes goes through the owning :class:`FieldSpec`; the
:class:`FieldElement` wrapper exists for the public, operator-based API.
"""

from __future__ import annotations

import functools
import math
import re

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    IncompatibleFields,
    NonPrimeCharacteristic,
    NotASquareField,
    PolySyntaxError,
    ReducibleModulus,
)

MAX_ORDER = 1 << 16
_ADD_TABLE_LIMIT = 729


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# --- dense polynomials over F_p, coefficient lists with constant term first ---

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible_mod_p(modulus, p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    m = _trim(list(modulus))
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p ** k, m, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


def _is_primitive_mod_p(modulus, p: int) -> bool:
    k = len(modulus) - 1
    order = p ** k - 1
    x = [0, 1] if k > 1 else [(-modulus[0]) % p]
    if modulus[0] % p == 0:
        return False
    if _ppowmod(x, order, modulus, p) != [1]:
        return False
    return all(_ppowmod(x, order // r, modulus, p) != [1] for r in prime_factors(order))


@functools.lru_cache(maxsize=None)
def conway_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Conway polynomial of degree k over F_p, constant term first.

    Computed from the definition: the first primitive polynomial in Conway's
    signed lexicographic order that is compatible with the Conway polynomials
    of all proper subfields.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"p={p} is not prime")
    if p ** k > MAX_ORDER:
        raise FieldTooLarge(f"p^k = {p ** k} exceeds {MAX_ORDER}")
    order = p ** k - 1
    divisors = [j for j in range(1, k) if k % j == 0]
    sub = {j: conway_polynomial(p, j) for j in divisors}
    for idx in range(p ** k):
        # t-digits, most significant first, are the signed coefficients of x^{k-1}..x^0
        t = [(idx // p ** (k - 1 - i)) % p for i in range(k)]
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        for i in range(k):
            deg = k - 1 - i
            sign = -1 if (k - deg) % 2 else 1
            coeffs[deg] = (sign * t[i]) % p
        if coeffs[0] == 0:
            continue
        if not _is_primitive_mod_p(coeffs, p):
            continue
        ok = True
        for j, cj in sub.items():
            # cj(x^e) must vanish modulo the candidate
            e = order // (p ** j - 1)
            xe = _ppowmod([0, 1], e, coeffs, p) if k > 1 else [(-coeffs[0]) % p]
            acc = []
            for c in reversed(cj):
                acc = _pmod(_pmul(acc, xe, p), coeffs, p)
                acc = _psub(acc, [(-c) % p], p)
            if acc:
                ok = False
                break
        if ok:
            return tuple(coeffs)
    raise ReducibleModulus(f"no Conway polynomial found for p={p}, k={k}")


class FieldSpec:
    """The field F_p[a]/(modulus), q = p^k. Construct through :func:`make_field`."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.q = p ** k
        self._key = (p, k, self.modulus)
        self._build_tables()

    # ---- construction helpers
    def _digits(self, code):
        p = self.p
        return [(code // p ** i) % p for i in range(self.k)]

    def _from_digits(self, digits):
        p = self.p
        code = 0
        for i in reversed(range(self.k)):
            code = code * p + (digits[i] % p if i < len(digits) else 0)
        return code

    def _slow_mul(self, a, b):
        prod = _pmul(self._digits(a), self._digits(b), self.p)
        return self._from_digits(_pmod(prod, self.modulus, self.p))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            self.gen = (-self.modulus[0]) % p
        else:
            self.gen = p
        if p == 2:
            self.add = self._add_xor
            self.sub = self._add_xor
        elif k == 1:
            self.add = self._add_prime
            self.sub = self._sub_prime
        elif q <= _ADD_TABLE_LIMIT:
            digits = [self._digits(c) for c in range(q)]
            tab = [0] * (q * q)
            for a in range(q):
                da = digits[a]
                for b in range(q):
                    db = digits[b]
                    tab[a * q + b] = self._from_digits([(x + y) % p for x, y in zip(da, db)])
            self._add_tab = tab
            self.add = self._add_table
            self.sub = self._sub_table
        else:
            self.add = self._add_digits
            self.sub = self._sub_digits
        self._neg = [self._from_digits([(-d) % p for d in self._digits(c)]) for c in range(q)]
        # discrete log tables
        g = self._find_primitive()
        exp = [0] * (q - 1)
        log = [-1] * q
        step = self._times_a if (g == self.gen and k > 1) else (lambda v: self._slow_mul(v, g))
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = step(x)
        self._exp = exp
        self._log = log
        self.primitive = g

    def _times_a(self, v):
        p, k = self.p, self.k
        top_w = p ** (k - 1)
        top = v // top_w
        v = (v % top_w) * p
        if top:
            # a^k = -(m_0 + ... + m_{k-1} a^{k-1})
            w = 1
            for i in range(k):
                c = self.modulus[i]
                if c:
                    d = (v // w) % p
                    v += (((d - top * c) % p) - d) * w
                w *= p
        return v

    def _find_primitive(self):
        q = self.q
        if q == 2:
            return 1
        order = q - 1
        factors = prime_factors(order)

        def slow_pow(x, e):
            r = 1
            while e:
                if e & 1:
                    r = self._slow_mul(r, x)
                x = self._slow_mul(x, x)
                e >>= 1
            return r

        candidates = [self.gen] + [c for c in range(2, q) if c != self.gen]
        for c in candidates:
            if c == 0:
                continue
            if all(slow_pow(c, order // r) != 1 for r in factors):
                return c
        raise ReducibleModulus("no primitive element: modulus is not irreducible")

    # ---- code arithmetic
    def _add_xor(self, a, b):
        return a ^ b

    def _add_prime(self, a, b):
        return (a + b) % self.p

    def _sub_prime(self, a, b):
        return (a - b) % self.p

    def _add_table(self, a, b):
        return self._add_tab[a * self.q + b]

    def _sub_table(self, a, b):
        return self._add_tab[a * self.q + self._neg[b]]

    def _add_digits(self, a, b):
        p = self.p
        out = 0
        w = 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _sub_digits(self, a, b):
        return self._add_digits(a, self._neg[b])

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.q - 1)]

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frob(self, a, j=1):
        """a^(p^j)."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * pow(self.p, j, self.q - 1)) % (self.q - 1)]

    def log(self, a):
        return self._log[a]

    def from_int(self, n: int) -> int:
        return n % self.p

    def scalar(self, n: int, a: int) -> int:
        """n * a for an integer n."""
        return self.mul(n % self.p, a)

    def in_subfield(self, a, j) -> bool:
        """True iff a lies in F_{p^j} (j must divide k)."""
        return self.frob(a, j) == a

    def coeffs(self, code) -> tuple[int, ...]:
        return tuple(self._digits(code))

    def from_coeffs(self, coeffs) -> int:
        if len(coeffs) > self.k:
            reduced = _pmod([c % self.p for c in coeffs], self.modulus, self.p)
            return self._from_digits(reduced)
        return self._from_digits([c % self.p for c in coeffs])

    # ---- public element API
    def __call__(self, value=0) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, str):
            return FieldElement(self, self.parse_code(value))
        return FieldElement(self, self.from_coeffs(list(value)))

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def a(self) -> FieldElement:
        """The class of the generator symbol ``a``."""
        return FieldElement(self, self.gen)

    @property
    def is_square_order(self) -> bool:
        return self.k % 2 == 0

    @property
    def sqrt_q(self) -> int:
        if self.k % 2:
            raise NotASquareField(f"q = {self.q} is not a square")
        return self.p ** (self.k // 2)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    def format_code(self, code: int) -> str:
        """Literal for an element: decimal for the prime subfield, else a polynomial in a."""
        if code < self.p:
            return str(code)
        parts = []
        for i, c in reversed(list(enumerate(self._digits(code)))):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mon = "a" if i == 1 else f"a^{i}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(parts)

    _TOKEN = re.compile(r"\s*(?:(\d+)|(a)|([-+*^()]))")

    def parse_code(self, text: str, offset: int = 0) -> int:
        """Parse a literal such as ``3``, ``a+1`` or ``2*a^2 + a`` into a code."""
        toks = []
        pos = 0
        s = text
        while pos < len(s):
            if s[pos].isspace():
                pos += 1
                continue
            m = self._TOKEN.match(s, pos)
            if not m:
                raise PolySyntaxError(f"unexpected character {s[pos]!r} in field literal", offset + pos)
            toks.append((m.group(0).strip(), offset + m.start(0) + (len(m.group(0)) - len(m.group(0).lstrip()))))
            pos = m.end()
        if not toks:
            raise PolySyntaxError("empty field literal", offset)
        i = 0
        total = 0
        sign = 1
        expect_term = True
        while i < len(toks):
            tok, tpos = toks[i]
            if tok in "+-" and expect_term:
                if tok == "-":
                    sign = -sign
                i += 1
                continue
            if not expect_term:
                if tok in "+-":
                    sign = 1 if tok == "+" else -1
                    expect_term = True
                    i += 1
                    continue
                raise PolySyntaxError(f"unexpected {tok!r} in field literal", tpos)
            coef = 1
            power = 0
            seen = False
            if tok.isdigit():
                coef = int(tok)
                seen = True
                i += 1
                if i < len(toks) and toks[i][0] == "*":
                    i += 1
                    if i >= len(toks) or toks[i][0] != "a":
                        raise PolySyntaxError("expected 'a' after '*'", toks[i - 1][1])
            if i < len(toks) and toks[i][0] == "a":
                seen = True
                power = 1
                i += 1
                if i < len(toks) and toks[i][0] == "^":
                    i += 1
                    if i >= len(toks) or not toks[i][0].isdigit():
                        raise PolySyntaxError("expected exponent after '^'", toks[i - 1][1])
                    power = int(toks[i][0])
                    i += 1
            if not seen:
                raise PolySyntaxError(f"unexpected {tok!r} in field literal", tpos)
            term = self.mul(self.from_int(coef * sign), self.pow(self.gen, power))
            total = self.add(total, term)
            expect_term = False
            sign = 1
        if expect_term:
            raise PolySyntaxError("dangling operator in field literal", toks[-1][1])
        return total

    def header(self) -> str:
        return f"p={self.p} k={self.k} mod=[{','.join(map(str, self.modulus))}]"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GF({self.q})" if self.modulus == _default_modulus(self.p, self.k) else f"GF({self.q}, mod={list(self.modulus)})"

    def __reduce__(self):
        return (make_field, (self.p, self.k, self.modulus))


class FieldElement:
    """Immutable element of a :class:`FieldSpec`."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return self.field.format_code(self.code)

    __str__ = __repr__


_FIELDS: dict[tuple, FieldSpec] = {}


def _default_modulus(p, k):
    try:
        return conway_polynomial(p, k)
    except Exception:
        return None


def make_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Validated, cached field F_{p^k}.

    ``modulus`` is the monic coefficient sequence, constant term first; when
    omitted the Conway polynomial is used, so the generator ``a`` is primitive.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"p={p} is not prime")
    if k < 1:
        raise ValueError("extension degree k must be >= 1")
    if p ** k > MAX_ORDER:
        raise FieldTooLarge(f"p^k = {p ** k} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = conway_polynomial(p, k)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {k}: {list(modulus)}")
        if not is_irreducible_mod_p(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over F_{p}")
    key = (p, k, tuple(modulus))
    field = _FIELDS.get(key)
    if field is None:
        field = _FIELDS[key] = FieldSpec(p, k, modulus)
    return field


def field_of_order(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k)


_HEADER = re.compile(r"p\s*=\s*(\d+)\s+k\s*=\s*(\d+)(?:\s+mod\s*=\s*\[([^\]]*)\])?")


def parse_field_header(text: str) -> tuple[FieldSpec, dict]:
    """Parse ``p=2 k=2 mod=[1,1,1]`` (plus trailing ``key=value`` pairs)."""
    m = _HEADER.match(text.strip())
    if not m:
        raise PolySyntaxError(f"bad field header {text!r}", 0)
    p, k = int(m.group(1)), int(m.group(2))
    mod = None
    if m.group(3) is not None:
        mod = [int(c) for c in m.group(3).split(",") if c.strip()]
    extra = {}
    for kv in text.strip()[m.end():].split():
        if "=" not in kv:
            raise PolySyntaxError(f"bad header entry {kv!r}", 0)
        key, val = kv.split("=", 1)
        extra[key] = val
    return make_field(p, k, mod), extra


def field_arith(op: str, *operands):
    """Dispatch helper: ``field_arith('mul', x, y)`` etc."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "sub":
        return operands[0] - operands[1]
    if op == "mul":
        return operands[0] * operands[1]
    if op == "div":
        return operands[0] / operands[1]
    if op == "neg":
        return -operands[0]
    if op == "inv":
        return operands[0].inverse()
    if op == "pow":
        return operands[0] ** operands[1]
    raise ValueError(f"unknown field operation {op!r}")


def frobenius_pow(x: FieldElement, j: int) -> FieldElement:
    """x^(p^j)."""
    if j < 0:
        raise ValueError("j must be >= 0")
    return FieldElement(x.field, x.field.frob(x.code, j))


def conjugate(x: FieldElement) -> FieldElement:
    """x^(sqrt q), the involution of a field of square order."""
    f = x.field
    if f.k % 2:
        raise NotASquareField(f"conjugation needs a square field order, got q={f.q}")
    return FieldElement(f, f.frob(x.code, f.k // 2))


def enumerate_field(field: FieldSpec) -> list[FieldElement]:
    return field.elements()


class Embedding:
    """Ring embedding of ``source`` into ``target`` sending a to a fixed root of the source modulus."""

    def __init__(self, source: FieldSpec, target: FieldSpec):
        self.source = source
        self.target = target
        root = None
        for r in range(target.q):
            acc = 0
            for c in reversed(source.modulus):
                acc = target.add(target.mul(acc, r), target.from_int(c))
            if acc == 0:
                root = r
                break
        if root is None:
            raise IncompatibleFields(f"{source} has no image in {target}")
        self.root = root
        images = []
        for code in range(source.q):
            acc = 0
            for c in reversed(source.coeffs(code)):
                acc = target.add(target.mul(acc, root), target.from_int(c))
            images.append(acc)
        self.images = images
        self.preimages = {img: code for code, img in enumerate(images)}

    def __call__(self, code: int) -> int:
        return self.images[code]

    def lift(self, code: int):
        """Preimage of a target code, or None if it is not in the image."""
        return self.preimages.get(code)


@functools.lru_cache(maxsize=None)
def embed_field(source: FieldSpec, target: FieldSpec) -> Embedding:
    if source.p != target.p or target.k % source.k:
        raise IncompatibleFields(f"{source} does not embed in {target}")
    return Embedding(source, target)


def embed(x: FieldElement, target: FieldSpec) -> FieldElement:
    if x.field == target:
        return x
    return FieldElement(target, embed_field(x.field, target)(x.code))


def common_extension(f1: FieldSpec, f2: FieldSpec) -> FieldSpec:
    if f1.p != f2.p:
        raise IncompatibleFields(f"characteristics differ: {f1} vs {f2}")
    if f1 == f2:
        return f1
    k = f1.k * f2.k // math.gcd(f1.k, f2.k)
    if k == f1.k and f1.modulus == conway_polynomial(f1.p, f1.k):
        return f1
    if k == f2.k and f2.modulus == conway_polynomial(f2.p, f2.k):
        return f2
    return make_field(f1.p, k)


def extension_of(field: FieldSpec, m: int) -> FieldSpec:
    """The default-modulus field of order q^m containing ``field``."""
    if m == 1:
        return field
    return make_field(field.p, field.k * m)
