"""Smooth Frobenius nonclassical curves of degree q + 2 with no rational points.

Run with ``python demos/pointless_curves.py``.
"""
from frobnc.analysis.points import count_points
from frobnc.analysis.smooth import best_smoothness
from frobnc.analysis.structure import matching_clause, separated_variables_detect
from frobnc.families import BUILTIN_Q_PLUS_2, gen_q_plus_2
from frobnc.frobcore import compute_F10
from frobnc.mpoly import format_poly

for name in BUILTIN_Q_PLUS_2:
    inst = gen_q_plus_2(None, builtin=name)
    F = inst.polynomial
    print(f"{name}: q={inst.q}, degree {F.degree}")
    print("  F =", format_poly(F))
    print("  F_1,0 is zero:", compute_F10(F, inst.q).is_zero())
    print("  smooth:", best_smoothness(F).smooth)
    print("  rational points:", count_points(F))
    print("  separated variables:", separated_variables_detect(F))
    print("  normal form:", matching_clause(F, inst.q))
