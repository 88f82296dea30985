"""Small reference pairs whose domains can be worked out by hand."""

from __future__ import annotations

from fractions import Fraction

from .domains import ValuationTable, make_table
from .polytope import Halfspace
from .toric import PairModel, validate_model

P1_RAYS = [(1,), (-1,)]
P2_RAYS = [(-1, -1), (1, 0), (0, 1)]
F1_RAYS = [(1, 0), (0, 1), (-1, 1), (0, -1)]


def projective_line() -> PairModel:
    return validate_model(P1_RAYS, [], name="P1")


def projective_plane() -> PairModel:
    return validate_model(P2_RAYS, [], name="P2")


def hirzebruch_f1() -> PairModel:
    return validate_model(F1_RAYS, [], name="F1")


def model_a() -> PairModel:
    """P^1 with D1 = 2*{0} and D2 = 2*{inf}."""
    return validate_model(P1_RAYS, [("D1", [2, 0]), ("D2", [0, 2])], name="MODEL-A")


def model_b() -> PairModel:
    """P^2 with D1 = 3L, L the toric line of the ray (1, 0)."""
    return validate_model(P2_RAYS, [("D1", [0, 3, 0])], name="MODEL-B")


def model_c() -> PairModel:
    """P^2 with D1 the toric boundary."""
    return validate_model(P2_RAYS, [("D1", [1, 1, 1])], name="MODEL-C")


def model_d() -> PairModel:
    """F_1 with D1 the toric boundary."""
    return validate_model(F1_RAYS, [("D1", [1, 1, 1, 1])], name="MODEL-D")


def model_e() -> PairModel:
    """P^2 with D1 = 3L and D2 the toric boundary."""
    return validate_model(P2_RAYS, [("D1", [0, 3, 0]), ("D2", [1, 1, 1])], name="MODEL-E")


def model_t() -> ValuationTable:
    """Two-row synthetic table with domain [1/2, 1]."""
    return make_table(
        1,
        [("E1", 1, 2, [0]), ("E2", 1, Fraction(1, 2), [1])],
        lc_halfspaces=[Halfspace.leq([1], 1)],
        certified=True,
        name="MODEL-T",
    )


ALL = {
    "MODEL-A": model_a,
    "MODEL-B": model_b,
    "MODEL-C": model_c,
    "MODEL-D": model_d,
    "MODEL-E": model_e,
    "MODEL-T": model_t,
}
