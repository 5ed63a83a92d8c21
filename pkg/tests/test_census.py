import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobnc.analysis.census import (
    CensusSpace,
    census,
    fn_bruteforce,
    fn_indices,
    make_record,
    merge_records,
    normalize_filters,
    read_jsonl,
)
from frobnc.errors import BudgetExceeded, InvalidParameters
from frobnc.gf import field_of_order
from frobnc.mpoly import is_pth_power


# ------------------------------------------------------------ the search space

@pytest.mark.parametrize("q,n,d", [(2, 2, 2), (3, 1, 3), (4, 2, 1)])
def test_space_size_and_indexing(q, n, d):
    K = field_of_order(q)
    sp = CensusSpace(K, n, d)
    assert sp.total == (q ** sp.N - 1) // (q - 1)
    block = sp.vectors(0, sp.total)
    seen = set()
    for i in range(sp.total):
        v = sp.vector(i)
        assert list(block[i]) == v
        assert next(c for c in v if c) == 1
        assert sp.index_of(v) == i
        seen.add(tuple(v))
    assert len(seen) == sp.total


@given(st.sampled_from([(2, 2, 3), (3, 2, 2), (4, 1, 3)]), st.data())
def test_vectors_slice_matches_single_lookup(spec, data):
    q, n, d = spec
    sp = CensusSpace(field_of_order(q), n, d)
    a = data.draw(st.integers(0, sp.total - 1))
    b = data.draw(st.integers(a, sp.total))
    rows = sp.vectors(a, b)
    assert [list(r) for r in rows] == [sp.vector(i) for i in range(a, b)]


def test_shard_ranges_partition_the_space():
    sp = CensusSpace(field_of_order(3), 2, 2)
    cuts = [sp.shard_range(i, 5) for i in range(5)]
    assert cuts[0][0] == 0 and cuts[-1][1] == sp.total
    assert all(cuts[i][1] == cuts[i + 1][0] for i in range(4))
    with pytest.raises(InvalidParameters):
        sp.shard_range(5, 5)


# ------------------------------------------------------------ the FN prefilter

@pytest.mark.parametrize("q,n,d", [(2, 2, 2), (2, 2, 3), (3, 2, 2), (4, 2, 2), (2, 3, 2), (4, 1, 3), (5, 1, 3)])
def test_prefilter_keeps_every_fn_candidate(q, n, d):
    K = field_of_order(q)
    assert fn_indices(K, n, d) == fn_bruteforce(K, n, d)


def test_prefilter_can_be_switched_off():
    K = field_of_order(2)
    a = census(K, 2, 3, "fn")
    b = census(K, 2, 3, "fn", prefilter=False)
    assert [r.index for r in a.records] == [r.index for r in b.records]
    assert b.stats.prefilter_survivors == b.stats.candidates > a.stats.prefilter_survivors


# ------------------------------------------------------------ records, shards and determinism

def test_shards_merge_to_full_run():
    K = field_of_order(2)
    full = census(K, 2, 3, "fn,nonhyperplane")
    parts = [census(K, 2, 3, "fn,nonhyperplane", shard=(i, 4)).records for i in range(4)]
    merged = merge_records(*reversed(parts))
    assert [r.dumps() for r in merged] == [r.dumps() for r in full.records]


def test_output_is_deterministic_and_round_trips():
    K = field_of_order(3)
    a = census(K, 2, 2, "fn").jsonl()
    b = census(K, 2, 2, "fn").jsonl()
    assert a == b
    records, summaries = read_jsonl(a)
    assert len(summaries) == 1 and summaries[0]["hits"] == len(records)
    assert [r.dumps() for r in records] == a.splitlines()[:-1]


def test_records_are_reproducible_from_the_vector():
    K = field_of_order(2)
    res = census(K, 2, 3, "fn")
    sp = CensusSpace(K, 2, 3)
    for r in res.records[:25]:
        assert sp.vector(r.index) == r.coefficients
        assert make_record(sp, r.index, r.coefficients).to_json() == r.to_json()


def test_budget_and_filter_errors():
    K = field_of_order(2)
    with pytest.raises(BudgetExceeded):
        census(K, 2, 3, "fn", budget=100)
    assert census(K, 2, 3, "fn", shard=(0, 11), budget=100).stats.candidates <= 100
    with pytest.raises(InvalidParameters):
        normalize_filters("fn,bogus")
    assert normalize_filters("smooth,fn,space-filling") == ("fn", "smooth", "space_filling")


def test_summary_shape():
    s = census(field_of_order(2), 2, 3, "fn").summary()
    for key in ("candidates", "prefilter_survivors", "passed", "hits", "flag_combinations",
                "normal_forms", "normalization", "shard", "index_range"):
        assert key in s


# ------------------------------------------------------------ exhaustive statements at small q

def test_no_smooth_fn_conics_over_F2():
    res = census(field_of_order(2), 2, 2, "fn,smooth_at_rational,nonhyperplane")
    assert res.records == []


def test_no_smooth_fn_conics_over_F3():
    # smooth FN forms of degree >= 2 need d >= p + 1 = 4
    res = census(field_of_order(3), 2, 2, "fn,smooth_at_rational,nonhyperplane")
    assert res.records == []


def test_square_root_bound_at_q4():
    res = census(field_of_order(4), 2, 2, "fn,reduced,smooth_at_rational")
    assert res.records == []


def test_smooth_fn_quartics_over_F2_match_normal_form():
    res = census(field_of_order(2), 2, 4, "fn,smooth")
    assert res.records
    assert all(r.matches_normal_form == "q_plus_2" for r in res.records)


@pytest.mark.slow
def test_no_smooth_fn_quintics_over_F2():
    res = census(field_of_order(2), 2, 5, "fn,smooth")
    assert res.records == []


@pytest.mark.parametrize("q,d", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_fn_non_pth_powers_have_rational_points(q, d):
    K = field_of_order(q)
    res = census(K, 2, d, "fn")
    sp = CensusSpace(K, 2, d)
    checked = 0
    for r in res.records:
        if is_pth_power(sp.poly(r.coefficients)).is_power:
            continue
        assert r.point_count >= 1
        checked += 1
    assert checked


@pytest.mark.parametrize("q,d", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_space_filling_needs_degree_above_q(q, d):
    assert census(field_of_order(q), 2, d, "space_filling").records == []


def test_space_filling_first_appears_at_q_plus_one():
    res = census(field_of_order(2), 2, 3, "fn,space_filling")
    assert res.records and all(r.space_filling and r.point_count == 7 for r in res.records)
