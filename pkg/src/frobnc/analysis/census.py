"""Exhaustive census of hypersurfaces of fixed degree over a small field.

Candidates are the nonzero coefficient vectors in canonical monomial order
(descending grevlex) whose first nonzero coefficient is 1.  They are
numbered block by block: block j holds the vectors whose leading position
is j, and inside a block the remaining coefficients are read as a base-q
number with position j+1 most significant.  A shard is a contiguous range
of these indices, so shards partition the space and merge by index.

Filters run cheap-first in the fixed order of FILTERS.  The ``fn`` filter
first applies a sound vectorised test: if F divides F_1,0 then F_1,0
vanishes wherever F does, so any point P outside P^n(F_q) with F(P) = 0 and
F_1,0(P) != 0 rules the candidate out.  Both values are F_p-linear in the
coefficient digits, which turns the test into one matrix product per chunk.
Survivors get the exact divisibility test.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import BudgetExceeded, InvalidParameters
from ..frobcore import is_frobenius_nonclassical
from ..gf import MAX_ORDER, FieldSpec, embed_field, extension_of
from ..mpoly import HomogPoly, format_poly, monomials, poly_power
from ..projgeom import num_points, point_array
from .points import count_points, singular_point_array
from .smooth import best_smoothness
from .structure import matching_clause, reducedness, separated_variables_detect

DEFAULT_BUDGET = 1 << 28
CHUNK = 1 << 15

FILTERS = (
    "fn",
    "nonhyperplane",
    "separated",
    "reduced",
    "smooth_at_rational",
    "smooth",
    "space_filling",
    "pointless",
)

_ALIASES = {
    "smooth-at-rational": "smooth_at_rational",
    "smooth_rational": "smooth_at_rational",
    "non-hyperplane": "nonhyperplane",
    "space-filling": "space_filling",
    "frobenius_nonclassical": "fn",
}


def normalize_filters(filters) -> tuple[str, ...]:
    """Canonical, ordered, de-duplicated filter names."""
    if isinstance(filters, str):
        filters = [f for f in filters.split(",") if f.strip()]
    names = set()
    for f in filters or ():
        f = f.strip().lower()
        f = _ALIASES.get(f, f)
        if f not in FILTERS:
            raise InvalidParameters(f"unknown census filter {f!r}; expected one of {', '.join(FILTERS)}")
        names.add(f)
    return tuple(f for f in FILTERS if f in names)


# ------------------------------------------------------------ the search space

class CensusSpace:
    """Scalar-normalised coefficient vectors of degree-d forms in n+1 variables."""

    def __init__(self, field: FieldSpec, n: int, d: int):
        if n < 1 or d < 1:
            raise InvalidParameters("census needs n >= 1 and d >= 1")
        self.field = field
        self.n = n
        self.d = d
        self.monos = monomials(n + 1, d)
        self.N = len(self.monos)
        q = field.q
        self.block_sizes = [q ** (self.N - 1 - j) for j in range(self.N)]
        offsets = [0]
        for s in self.block_sizes:
            offsets.append(offsets[-1] + s)
        self.offsets = offsets
        self.total = offsets[-1]

    def _locate(self, index):
        if not 0 <= index < self.total:
            raise IndexError(f"index {index} outside [0, {self.total})")
        j = int(np.searchsorted(self.offsets, index, side="right")) - 1
        return j, index - self.offsets[j]

    def vector(self, index: int) -> list[int]:
        q = self.field.q
        j, local = self._locate(index)
        vec = [0] * self.N
        vec[j] = 1
        for pos in range(self.N - 1, j, -1):
            vec[pos] = local % q
            local //= q
        return vec

    def index_of(self, vec) -> int:
        q = self.field.q
        j = next(i for i, c in enumerate(vec) if c)
        if vec[j] != 1:
            raise InvalidParameters("vector is not scalar-normalised")
        local = 0
        for pos in range(j + 1, self.N):
            local = local * q + vec[pos]
        return self.offsets[j] + local

    def vectors(self, start: int, stop: int) -> np.ndarray:
        """Code array (stop-start, N) for the given index range."""
        q = self.field.q
        out = np.zeros((stop - start, self.N), dtype=np.int64)
        if stop <= start:
            return out
        j0, _ = self._locate(start)
        row = 0
        for j in range(j0, self.N):
            lo = max(start, self.offsets[j])
            hi = min(stop, self.offsets[j + 1])
            if lo >= hi:
                if self.offsets[j] >= stop:
                    break
                continue
            local = np.arange(lo - self.offsets[j], hi - self.offsets[j], dtype=np.int64)
            blk = out[row:row + hi - lo]
            blk[:, j] = 1
            for pos in range(self.N - 1, j, -1):
                blk[:, pos] = local % q
                local = local // q
            row += hi - lo
        return out

    def poly(self, vec) -> HomogPoly:
        terms = {e: int(c) for e, c in zip(self.monos, vec) if c}
        return HomogPoly(self.field, self.n + 1, self.d, terms, check=False)

    def shard_range(self, i: int, parts: int) -> tuple[int, int]:
        if parts < 1 or not 0 <= i < parts:
            raise InvalidParameters(f"shard {i}/{parts} is not valid")
        return self.total * i // parts, self.total * (i + 1) // parts


# ------------------------------------------------------------ FN prefilter

def _orbit_reps(n: int, K: FieldSpec, L: FieldSpec, m: int) -> np.ndarray:
    """One point per q-Frobenius orbit of size exactly m in P^n(L)."""
    pts = point_array(n, L)
    q = K.q
    index = {tuple(int(x) for x in row): i for i, row in enumerate(pts)}
    seen = np.zeros(pts.shape[0], dtype=bool)
    reps = []
    for i, row in enumerate(pts):
        if seen[i]:
            continue
        orbit = [i]
        cur = [int(x) for x in row]
        while True:
            cur = [L.pow(x, q) for x in cur]
            piv = next(c for c in cur if c)
            inv = L.inv(piv)
            cur = [L.mul(x, inv) for x in cur]
            k = index[tuple(cur)]
            if k == i:
                break
            orbit.append(k)
        seen[orbit] = True
        if len(orbit) == m:
            reps.append(row)
    return np.array(reps, dtype=np.int64).reshape(-1, n + 1)


class FNPrefilter:
    """Stages of orbit representatives over F_{q^m}; each stage is one F_p-linear map."""

    def __init__(self, field: FieldSpec, n: int, d: int, degrees=None, max_points: int = 4000):
        K = field
        self.field = K
        self.p = K.p
        self.monos = monomials(n + 1, d)
        if degrees is None:
            degrees = (2, 3, 4)
        self.stages = []
        for m in degrees:
            if K.q ** m > MAX_ORDER or num_points(n, K.q ** m) > max_points * m:
                continue
            L = extension_of(K, m)
            reps = _orbit_reps(n, K, L, m)
            if reps.shape[0]:
                self.stages.append((m, self._matrix(K, L, reps), L.k))

    def _matrix(self, K, L, reps):
        """Rows: (monomial, basis digit) pairs; columns: (point, F or F_1,0, L-digit)."""
        emb = embed_field(K, L)
        beta = [emb(K.from_coeffs([0] * t + [1])) for t in range(K.k)]
        q = K.q
        p = self.p
        s = reps.shape[0]
        kL = L.k
        A = np.zeros((len(self.monos) * K.k, s * 2 * kL), dtype=np.float32)
        for r, P in enumerate(reps):
            P = [int(x) for x in P]
            Pq = [L.pow(x, q) for x in P]
            for mi, e in enumerate(self.monos):
                val = 1
                for x, k in zip(P, e):
                    if k:
                        val = L.mul(val, L.pow(x, k))
                der = 0
                for i, k in enumerate(e):
                    if k % p == 0:
                        continue
                    ee = list(e)
                    ee[i] -= 1
                    t = L.from_int(k)
                    for x, kk in zip(P, ee):
                        if kk:
                            t = L.mul(t, L.pow(x, kk))
                    der = L.add(der, L.mul(Pq[i], t))
                for t, b in enumerate(beta):
                    row = mi * K.k + t
                    base = r * 2 * kL
                    A[row, base:base + kL] = L.coeffs(L.mul(b, val))
                    A[row, base + kL:base + 2 * kL] = L.coeffs(L.mul(b, der))
        return A

    def digits(self, vecs: np.ndarray) -> np.ndarray:
        """Coefficient codes (B, N) to F_p digits (B, N*k) in float32."""
        K = self.field
        if K.k == 1:
            return vecs.astype(np.float32)
        out = np.empty((vecs.shape[0], vecs.shape[1] * K.k), dtype=np.float32)
        v = vecs.copy()
        for t in range(K.k):
            out[:, t::K.k] = v % K.p
            v //= K.p
        return out

    def survivors(self, vecs: np.ndarray) -> np.ndarray:
        """Boolean mask of candidates not ruled out by any stage."""
        alive = np.ones(vecs.shape[0], dtype=bool)
        if not self.stages or vecs.shape[0] == 0:
            return alive
        D = self.digits(vecs)
        p = self.p
        for m, A, kL in self.stages:
            idx = np.nonzero(alive)[0]
            if idx.size == 0:
                break
            V = np.mod(D[idx] @ A, p).reshape(idx.size, -1, 2, kL)
            fz = ~(V[:, :, 0, :].any(axis=2))
            gz = ~(V[:, :, 1, :].any(axis=2))
            bad = (fz & ~gz).any(axis=1)
            alive[idx[bad]] = False
        return alive


# ------------------------------------------------------------ records

@dataclass
class CensusRecord:
    p: int
    k: int
    n: int
    d: int
    index: int
    coefficients: list
    poly: str
    fn: bool
    f10_kind: str
    smooth_at_rational: bool
    smooth_geometric: dict
    space_filling: bool
    point_count: int
    separated_variables: bool
    matches_normal_form: str | None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "d": self.d,
            "index": self.index,
            "coefficients": list(self.coefficients),
            "poly": self.poly,
            "fn": self.fn,
            "f10_kind": self.f10_kind,
            "smooth_at_rational": self.smooth_at_rational,
            "smooth_geometric": self.smooth_geometric,
            "space_filling": self.space_filling,
            "point_count": self.point_count,
            "separated_variables": self.separated_variables,
            "matches_normal_form": self.matches_normal_form,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CensusRecord":
        return cls(**{k: obj[k] for k in cls.__dataclass_fields__})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def make_record(space: CensusSpace, index: int, vec, fn_kind: str | None = None) -> CensusRecord:
    """Every flag of a record, computed from the coefficient vector alone."""
    F = space.poly(vec)
    K = space.field
    if fn_kind is None:
        fn_kind = is_frobenius_nonclassical(F, K.q).kind
    sm = best_smoothness(F)
    pc = count_points(F, 1)
    sing = singular_point_array(F, 1, first_only=True).shape[0] > 0
    clause = None
    if F.degree in (K.q + 1, K.q + 2):
        clause = matching_clause(F)
    return CensusRecord(
        p=K.p,
        k=K.k,
        n=space.n,
        d=space.d,
        index=index,
        coefficients=[int(c) for c in vec],
        poly=format_poly(F),
        fn=fn_kind != "not_divisible",
        f10_kind=fn_kind,
        smooth_at_rational=not sing,
        smooth_geometric={"smooth": sm.smooth, "mode": sm.mode, "certified": sm.certified and sm.mode == "certified"},
        space_filling=pc == num_points(space.n, K.q),
        point_count=pc,
        separated_variables=separated_variables_detect(F) is not None,
        matches_normal_form=clause,
    )


# ------------------------------------------------------------ running

@dataclass
class CensusStats:
    candidates: int = 0
    prefilter_survivors: int = 0
    passed: dict = dc_field(default_factory=dict)  # filter name -> count passing it
    hits: int = 0
    seconds: float = 0.0

    def merge(self, other: "CensusStats"):
        self.candidates += other.candidates
        self.prefilter_survivors += other.prefilter_survivors
        for k, v in other.passed.items():
            self.passed[k] = self.passed.get(k, 0) + v
        self.hits += other.hits
        self.seconds += other.seconds


def _is_power_of_linear(F: HomogPoly) -> bool:
    """True when X is set-theoretically one hyperplane: F = c * l^d for a linear form l."""
    K = F.field
    lead, c = F.leading_term()
    G = F.scale(K.element(K.inv(c)))
    for P in point_array(F.nvars - 1, K):
        ell = HomogPoly.linear(K, [int(x) for x in P])
        Gl = poly_power(ell, F.degree)
        if not Gl.is_zero():
            lead2, c2 = Gl.leading_term()
            if lead2 == lead and Gl.scale(K.element(K.inv(c2))) == G:
                return True
    return False


def _passes(name, F, state):
    if name == "nonhyperplane":
        return not _is_power_of_linear(F)
    if name == "separated":
        return separated_variables_detect(F) is not None
    if name == "reduced":
        return reducedness(F).reduced is True
    if name == "smooth_at_rational":
        return singular_point_array(F, 1, first_only=True).shape[0] == 0
    if name == "smooth":
        if singular_point_array(F, 1, first_only=True).shape[0]:
            return False
        return best_smoothness(F).smooth
    if name == "space_filling":
        state["count"] = state.get("count", count_points(F, 1))
        return state["count"] == num_points(F.nvars - 1, F.field.q)
    if name == "pointless":
        state["count"] = state.get("count", count_points(F, 1))
        return state["count"] == 0
    raise InvalidParameters(name)


def census_range(field: FieldSpec, n: int, d: int, filters, start: int, stop: int,
                 prefilter: bool = True):
    """Records (in index order) and stats for the index range [start, stop)."""
    t0 = time.perf_counter()
    filters = normalize_filters(filters)
    space = CensusSpace(field, n, d)
    stop = min(stop, space.total)
    stats = CensusStats()
    pre = FNPrefilter(field, n, d) if ("fn" in filters and prefilter) else None
    records = []
    for s in range(start, stop, CHUNK):
        e = min(s + CHUNK, stop)
        vecs = space.vectors(s, e)
        stats.candidates += e - s
        if pre is not None:
            alive = np.nonzero(pre.survivors(vecs))[0]
        else:
            alive = np.arange(e - s)
        stats.prefilter_survivors += int(alive.size)
        for i in alive:
            vec = vecs[i]
            F = space.poly(vec)
            kind = None
            if "fn" in filters:
                kind = is_frobenius_nonclassical(F, field.q).kind
                if kind == "not_divisible":
                    continue
                stats.passed["fn"] = stats.passed.get("fn", 0) + 1
            state: dict = {}
            ok = True
            for name in filters:
                if name == "fn":
                    continue
                if not _passes(name, F, state):
                    ok = False
                    break
                stats.passed[name] = stats.passed.get(name, 0) + 1
            if ok:
                records.append(make_record(space, s + int(i), [int(c) for c in vec], kind))
    stats.hits = len(records)
    stats.seconds = time.perf_counter() - t0
    return records, stats


def _worker(args):
    field, n, d, filters, start, stop, prefilter = args
    return census_range(field, n, d, filters, start, stop, prefilter)


@dataclass
class CensusResult:
    field: FieldSpec
    n: int
    d: int
    filters: tuple
    shard: tuple
    index_range: tuple
    records: list
    stats: CensusStats

    def summary(self) -> dict:
        combos: dict = {}
        for r in self.records:
            key = ",".join(
                name for name, flag in (
                    ("fn", r.fn),
                    ("smooth_at_rational", r.smooth_at_rational),
                    ("smooth", r.smooth_geometric["smooth"]),
                    ("space_filling", r.space_filling),
                    ("separated", r.separated_variables),
                ) if flag
            ) or "none"
            combos[key] = combos.get(key, 0) + 1
        clauses: dict = {}
        for r in self.records:
            key = r.matches_normal_form or "none"
            clauses[key] = clauses.get(key, 0) + 1
        return {
            "summary": True,
            "p": self.field.p,
            "k": self.field.k,
            "n": self.n,
            "d": self.d,
            "filters": list(self.filters),
            "shard": list(self.shard),
            "index_range": list(self.index_range),
            "candidates": self.stats.candidates,
            "prefilter_survivors": self.stats.prefilter_survivors,
            "passed": dict(sorted(self.stats.passed.items())),
            "hits": len(self.records),
            "flag_combinations": dict(sorted(combos.items())),
            "normal_forms": dict(sorted(clauses.items())),
            "normalization": "first nonzero coefficient = 1; no projective-equivalence deduplication",
        }

    def jsonl(self, summary: bool = True) -> str:
        lines = [r.dumps() for r in self.records]
        if summary:
            lines.append(json.dumps(self.summary(), sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def census(field: FieldSpec, n: int, d: int, filters=("fn",), shard=(0, 1), budget: int = DEFAULT_BUDGET,
           threads: int = 1, prefilter: bool = True) -> CensusResult:
    """Run the census on one shard (index i of N) of the scalar-normalised space.

    Raises BudgetExceeded when the shard holds more than ``budget`` candidates.
    """
    filters = normalize_filters(filters)
    space = CensusSpace(field, n, d)
    i, parts = shard
    start, stop = space.shard_range(i, parts)
    size = stop - start
    if size > budget:
        need = -(-space.total // budget)
        raise BudgetExceeded(
            f"{size} candidates in shard {i}/{parts} exceed the budget {budget}; use at least {need} shards")
    t0 = time.perf_counter()
    if threads <= 1 or size < 2 * CHUNK:
        records, stats = census_range(field, n, d, filters, start, stop, prefilter)
    else:
        pieces = threads * 4
        cuts = [start + size * j // pieces for j in range(pieces + 1)]
        jobs = [(field, n, d, filters, cuts[j], cuts[j + 1], prefilter) for j in range(pieces)]
        records = []
        stats = CensusStats()
        with ProcessPoolExecutor(threads) as pool:
            for recs, st in pool.map(_worker, jobs):
                records.extend(recs)
                stats.merge(st)
        records.sort(key=lambda r: r.index)
    stats.seconds = time.perf_counter() - t0
    return CensusResult(field, n, d, filters, (i, parts), (start, stop), records, stats)


def merge_records(*record_lists) -> list:
    """Merge shard outputs into canonical index order."""
    out = [r for rs in record_lists for r in rs]
    out.sort(key=lambda r: r.index)
    return out


def read_jsonl(text: str) -> tuple[list, list]:
    """Parse census JSONL into (records, summaries)."""
    records, summaries = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        if obj.get("summary"):
            summaries.append(obj)
        else:
            records.append(CensusRecord.from_json(obj))
    return records, summaries


def fn_bruteforce(field: FieldSpec, n: int, d: int) -> list[int]:
    """Indices of every FN candidate by exact divisibility alone (reference for small spaces)."""
    space = CensusSpace(field, n, d)
    out = []
    for idx in range(space.total):
        F = space.poly(space.vector(idx))
        if is_frobenius_nonclassical(F, field.q).nonclassical:
            out.append(idx)
    return out


def fn_indices(field: FieldSpec, n: int, d: int, start: int = 0, stop: int | None = None) -> list[int]:
    """Indices of FN candidates via prefilter and exact check."""
    space = CensusSpace(field, n, d)
    stop = space.total if stop is None else stop
    pre = FNPrefilter(field, n, d)
    out = []
    for s in range(start, stop, CHUNK):
        e = min(s + CHUNK, stop)
        vecs = space.vectors(s, e)
        for i in np.nonzero(pre.survivors(vecs))[0]:
            if is_frobenius_nonclassical(space.poly(vecs[i]), field.q).nonclassical:
                out.append(s + int(i))
    return out


__all__ = [
    "CensusRecord",
    "CensusResult",
    "CensusSpace",
    "CensusStats",
    "DEFAULT_BUDGET",
    "FILTERS",
    "FNPrefilter",
    "census",
    "census_range",
    "fn_bruteforce",
    "fn_indices",
    "make_record",
    "merge_records",
    "normalize_filters",
    "read_jsonl",
]
