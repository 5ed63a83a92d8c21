"""Exhaustive search over plane curves of small degree over F_2.

Each line reports how many forms survive the Frobenius nonclassical test and
how many of those are smooth.  Run with ``python demos/small_census.py``.
"""
from frobnc.analysis.census import census
from frobnc.gf import field_of_order

K = field_of_order(2)
for d in (2, 3, 4):
    res = census(K, 2, d, "fn,smooth")
    s = res.stats
    print(f"d={d}: {s.candidates} forms, {s.passed['fn']} FN, {s.hits} smooth FN ({s.seconds:.2f}s)")
    for r in res.records:
        print(f"    {r.poly}  points={r.point_count}  normal form={r.matches_normal_form}")
