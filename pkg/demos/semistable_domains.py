"""
Where is a pair K-semistable?
=============================

For a Fano variety X with boundary divisors D_1, ..., D_k, the coefficient
vectors x in the simplex for which (X, sum x_j D_j) is K-semistable form a
rational polytope.  Here we compute it for a few small pairs and check it
against pointwise delta computations.
"""

from fractions import Fraction

from kssdomain import fixtures
from kssdomain.domains import beta_forms, delta_at, kss_domain, lc_polytope
from kssdomain.oracle import grid_oracle

###############################################################################
# Two points on the projective line
# ---------------------------------
# MODEL-A puts the two torus-fixed points on P^1 as separate boundaries.  Each
# valuation contributes one linear inequality beta >= 0.

A = fixtures.model_a()
for b in beta_forms(A):
    print(b.label, " beta =", b.constant, "+", [str(c) for c in b.coeffs], ". x")

res = kss_domain(A)
print("domain vertices:", [tuple(map(str, v)) for v in res.domain.vertices])
print("mu =", res.mu, " in_E =", res.in_E)

###############################################################################
# The log canonical polytope is larger; the domain sits inside it.

print("lc vertices:", [tuple(map(str, v)) for v in lc_polytope(A).vertices])

###############################################################################
# Pointwise checks
# ----------------
# On the diagonal delta stays at 1; off it the pair is unstable.

for x in [(Fraction(1, 4), Fraction(1, 4)), (Fraction(1, 8), Fraction(1, 4))]:
    r = delta_at(A, x)
    print([str(c) for c in x], r.status, "delta =", r.delta, "via", r.minimizer)

###############################################################################
# One boundary at a time
# ----------------------

for name in ("MODEL-B", "MODEL-C", "MODEL-D", "MODEL-T"):
    r = kss_domain(fixtures.ALL[name]())
    lo, hi = r.interval if r.interval else (None, None)
    print(f"{name}: [{lo}, {hi}]  mu={r.mu}  in_E={r.in_E}  closure_flag={r.closure_flag}")

###############################################################################
# A brute-force grid agrees with the polytope
# -------------------------------------------

for name in ("MODEL-A", "MODEL-E"):
    rep = grid_oracle(fixtures.ALL[name](), 30)
    print(name, rep.points, "grid points,", len(rep.mismatches), "mismatches,", rep.counts)
