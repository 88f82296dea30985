"""
Valuative invariants of a toric Fano surface
============================================

Everything on a toric Fano variety is read off its anticanonical polytope.
This script builds the first Hirzebruch surface from its rays, then looks at
log discrepancies, expected vanishing orders and their lattice-point
approximations.  All numbers are exact fractions.
"""

from kssdomain import fixtures, toric
from kssdomain import polytope as poly

###############################################################################
# The surface and its polytope
# ----------------------------
# Rays (1,0), (0,1), (-1,1), (0,-1).  The anticanonical polytope is cut out
# by <y, r> >= -1 for each ray; its normalized volume is the degree.

X = fixtures.hirzebruch_f1().base
print("vertices of P:", [tuple(map(str, v)) for v in X.P.vertices])
print("degree:", X.degree, " barycenter:", tuple(map(str, X.barycenter)))

###############################################################################
# A, S and T on the rays
# ----------------------
# The ray with the smallest A/S ratio computes delta.

for i, r in enumerate(X.rays):
    A = toric.log_discrepancy(X, r)
    S = toric.s_invariant(X, r)
    T = toric.t_invariant(X, r)
    print(f"{X.ray_label(i):10s} A={A}  S={S}  T={T}  A/S={A / S}")

###############################################################################
# Off the rays the invariants are linear on each cone.  Take a point inside
# the cone spanned by (1,0) and (0,1):

u = (2, 3)
cone, lam = toric.cone_of(X, u)
print("u =", u, "has ray coordinates", [str(c) for c in lam])
print("A(u) =", toric.log_discrepancy(X, u), " S(u) =", toric.s_invariant(X, u))

###############################################################################
# Lattice-point approximations
# ----------------------------
# S_m averages the vanishing order over lattice points of mP.  It tends to S
# as m grows.

r = (0, 1)
for m in (1, 2, 4, 8, 16):
    sm = toric.s_m_invariant(X, r, m)
    print(f"m={m:2d}  points={len(toric.lattice_points(X.P, m)):4d}  S_m={sm}  |S_m - S|={abs(sm - toric.s_invariant(X, r))}")

###############################################################################
# Volume and barycenter come from a triangulation; any root vertex gives the
# same answer.

print("volumes by root:", {poly.volume(X.P, root=i) for i in range(len(X.P.vertices))})
