"""
Chambers and wall crossing
==========================

Given a family of pairs with the same number of boundaries, the facet
hyperplanes of all their domains cut the simplex into chambers.  Inside one
chamber no status changes; crossing a wall can.
"""

from fractions import Fraction
from pathlib import Path

from kssdomain import fixtures, svg
from kssdomain.chambers import chamber_complex, crossing_report, face_constancy_check, partition_volume

###############################################################################
# A one-parameter family
# ----------------------

family = [fixtures.model_b(), fixtures.model_c(), fixtures.model_d(), fixtures.model_t()]
cx = chamber_complex(family)
print("walls:", [str(h) for h in cx.walls])
for c in cx.chambers:
    ends = [str(v[0]) for v in c.closure.vertices]
    print(c.sign_vector, ends, c.statuses)
print("total length:", partition_volume(cx))

###############################################################################
# Walking from 1/4 to 3/4 for the table model crosses one wall.

rep = crossing_report(cx, "MODEL-T", [Fraction(1, 4)], [Fraction(3, 4)])
for cr in rep.crossings:
    print("crossed at t =", cr.t, "point", [str(p) for p in cr.point], "status there:", cr.status)
print("statuses along the way:", rep.status_sequence)

###############################################################################
# Two parameters
# --------------
# The arrangement for MODEL-A has four chambers.  Sampling every face of every
# chamber confirms that statuses are constant on faces.

cx2 = chamber_complex([fixtures.model_a()])
print(len(cx2.chambers), "chambers, area", partition_volume(cx2))
print("faces checked:", face_constancy_check(cx2).faces_checked)

out = Path("chambers-A.svg")
out.write_text(svg.render_chambers(cx2.to_json()), encoding="utf-8")
print("wrote", out)
