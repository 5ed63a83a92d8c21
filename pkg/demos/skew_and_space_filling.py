"""Skew forms: hypersurfaces that contain every rational point of the space.

Run with ``python demos/skew_and_space_filling.py``.
"""
from frobnc.analysis.points import count_points, is_space_filling
from frobnc.analysis.smooth import best_smoothness
from frobnc.families import gen_space_filling
from frobnc.frobcore import compute_F10, is_frobenius_nonclassical, is_hermitian_hypersurface
from frobnc.mpoly import format_poly
from frobnc.projgeom import num_points

for q in (2, 3, 4):
    F = gen_space_filling(q, 3).polynomial
    print(f"q={q}: F = {format_poly(F)}")
    print("  F_1,0 is zero:", compute_F10(F, q).is_zero())
    print(f"  points {count_points(F)} of {num_points(3, q)}, space filling: {is_space_filling(F)}")
    print("  smooth:", best_smoothness(F).smooth)
    # Over F_{q^2} the same polynomial satisfies F_1,0 = -F^q, and it is Hermitian there.
    big = is_frobenius_nonclassical(F, q * q)
    print(f"  over F_{q * q}: {big.kind} with c = {big.c}, e = {big.e}")
    print("  Hermitian over F_q^2:", is_hermitian_hypersurface(F, q * q).is_hermitian)
