"""Vectorised finite-field arithmetic on numpy arrays of element codes.

Used for bulk evaluation over point sets and for Gaussian elimination
(rank and determinant) on Macaulay-type matrices.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import DivisionByZero
from .gf import FieldSpec


class VecField:
    def __init__(self, K: FieldSpec):
        self.K = K
        self.q = K.q
        self.p = K.p
        self.order = K.q - 1
        exp = np.array(K._exp, dtype=np.int64)
        self.exp2 = np.concatenate([exp, exp])
        log = np.array(K._log, dtype=np.int64)
        log[0] = 0
        self.log = log
        self.neg_tab = np.array(K._neg, dtype=np.int64)
        if K.p != 2 and K.k > 1 and K.q <= 1024:
            tab = np.empty((K.q, K.q), dtype=np.int64)
            for a in range(K.q):
                for b in range(K.q):
                    tab[a, b] = K.add(a, b)
            self.add_tab = tab
        else:
            self.add_tab = None
        self.inv_tab = np.array([0] + [K.inv(a) for a in range(1, K.q)], dtype=np.int64)

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.K.k == 1:
            return (a + b) % self.p
        if self.add_tab is not None:
            return self.add_tab[a, b]
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        for _ in range(self.K.k):
            out += (((a // w) % p + (b // w) % p) % p) * w
            w *= p
        return out

    def neg(self, a):
        return self.neg_tab[a]

    def sub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.K.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg_tab[b])

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self.q == 2:
            return a & b
        r = self.exp2[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def pow(self, a, e: int):
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        r = self.exp2[(self.log[a] * e) % self.order]
        return np.where(a == 0, 0, r)

    def inv(self, a):
        return self.inv_tab[a]


@functools.lru_cache(maxsize=None)
def vec_field(K: FieldSpec) -> VecField:
    return VecField(K)


def eval_terms(V: VecField, terms, X):
    """Evaluate sum c_e x^e at every row of the code array X (terms already in X's field)."""
    X = np.asarray(X, dtype=np.int64)
    N = X.shape[0]
    acc = np.zeros(N, dtype=np.int64)
    if not terms:
        return acc
    logX = V.log[X]
    zero = X == 0
    order = V.order
    for e, c in terms:
        s = np.full(N, V.log[c], dtype=np.int64)
        bad = np.zeros(N, dtype=bool)
        for i, k in enumerate(e):
            if k:
                s += logX[:, i] * k
                bad |= zero[:, i]
        val = V.exp2[s % order]
        val[bad] = 0
        acc = V.add(acc, val)
    return acc


def eval_poly(F, X, target: FieldSpec | None = None):
    """Evaluate HomogPoly F at the rows of X (codes of ``target``, default F's field)."""
    from .gf import embed_field

    K = target or F.field
    V = vec_field(K)
    if K != F.field:
        img = embed_field(F.field, K).images
        terms = [(e, img[c]) for e, c in F.terms.items()]
    else:
        terms = list(F.terms.items())
    return eval_terms(V, terms, X)


def row_reduce(V: VecField, M, want_det=False, stop_on_deficiency=False):
    """Gaussian elimination over the field; returns (rank, det or None).

    ``det`` is only meaningful for square input.  With ``stop_on_deficiency``
    the routine returns as soon as a column without a pivot is found.
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("matrix expected")
    rows, cols = A.shape
    K = V.K
    det = 1
    rank = 0
    r = 0
    for c in range(cols):
        if r >= rows:
            if stop_on_deficiency:
                return rank, 0
            break
        col = A[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            det = 0
            if stop_on_deficiency:
                return rank, 0
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
            det = K.neg(det)
        pv = int(A[r, c])
        if want_det:
            det = K.mul(det, pv)
        inv = K.inv(pv)
        if inv != 1:
            A[r, c:] = V.mul(A[r, c:], inv)
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            factors = A[below, c][:, None]
            A[below, c:] = V.sub(A[below, c:], V.mul(factors, A[r, c:][None, :]))
        r += 1
        rank += 1
    if rows != cols or rank < cols:
        det = 0
    return rank, (det if want_det else None)


def rank(K: FieldSpec, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return row_reduce(vec_field(K), M)[0]


def det(K: FieldSpec, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] != M.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    if M.shape[0] == 0:
        return 1
    return row_reduce(vec_field(K), M, want_det=True)[1]


def inverse(K: FieldSpec, M):
    """Matrix inverse over K (list of lists of codes)."""
    V = vec_field(K)
    n = len(M)
    A = np.concatenate([np.array(M, dtype=np.int64).reshape(n, n), np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            raise DivisionByZero("singular matrix")
        piv = c + int(nz[0])
        A[[c, piv]] = A[[piv, c]]
        A[c] = V.mul(A[c], K.inv(int(A[c, c])))
        others = np.array([r for r in range(n) if r != c and A[r, c]], dtype=np.int64)
        if others.size:
            A[others] = V.sub(A[others], V.mul(A[others, c][:, None], A[c][None, :]))
    return A[:, n:].tolist()


def matmul(K: FieldSpec, A, B):
    V = vec_field(K)
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = V.add(out, V.mul(A[:, k][:, None], B[k, :][None, :]))
    return out.tolist()
