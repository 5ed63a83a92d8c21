"""Walk through the Hermitian cubic x0^3 + x1^3 + x2^3 over F_4.

Run with ``python demos/hermitian_cubic.py``.
"""
from frobnc.analysis.lines import blocking_verdict, line_incidence
from frobnc.analysis.points import point_count_report
from frobnc.analysis.smooth import best_smoothness
from frobnc.frobcore import compute_F10, is_frobenius_nonclassical, is_hermitian_hypersurface
from frobnc.gf import field_of_order
from frobnc.mpoly import format_poly, parse_poly

K = field_of_order(4)
F = parse_poly("x0^3 + x1^3 + x2^3", K, 3)
print("F      =", format_poly(F))

# F10 = sum x_i^q (dF/dx_i) is a multiple of F exactly when F is Frobenius nonclassical.
print("F_1,0  =", format_poly(compute_F10(F, 4)))
cls = is_frobenius_nonclassical(F, 4)
print(f"class  = {cls.kind}, F_1,0 = {cls.c} * F^{cls.e}")

# The same curve is not nonclassical for the larger Frobenius of F_16.
print("over F_16:", is_frobenius_nonclassical(F, 16).kind)

herm = is_hermitian_hypersurface(F, 4)
print("Hermitian:", herm.is_hermitian, "rank", herm.rank)

sm = best_smoothness(F)
print(f"smooth: {sm.smooth} (certified by {sm.method})")

rep = point_count_report(F, (1, 2))
print("points over F_4, F_16:", rep.counts[1], rep.counts[2])
for b in rep.bounds:
    print(f"  {b.kind:5s} bound {b.name}: {b.value}  satisfied={b.satisfied}")

# Every F_4-line meets the curve, yet no line lies on it.
blk = blocking_verdict(F)
print(f"blocking set: {blk.blocking}, nontrivial: {blk.nontrivial}, {blk.point_count} >= {blk.heim_value}")

inc = line_incidence(F, assume_irreducible=True, assume_reduced=True)
print(f"of {inc.total} lines: {inc.transverse} transverse, {inc.tangent_or_singular} tangent, {inc.contained} contained")
tangent = next(r for r in inc.records if r.kind != "transverse")
print("a tangent line meets the curve in one point of multiplicity", tangent.profile[0][1])
