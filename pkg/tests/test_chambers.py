import math
import random
from fractions import Fraction as F

import pytest

from kssdomain import fixtures
from kssdomain import polytope as poly
from kssdomain.chambers import (
    chamber_complex,
    collect_walls,
    crossing_report,
    face_constancy_check,
    joint_face_constancy_check,
    partition_volume,
    split_by_k,
)
from kssdomain.domains import KSS, UNSTABLE, make_table, random_point_in, status_at
from kssdomain.errors import DegenerateInputError, InputError, InvariantViolation
from kssdomain.exact import Hyperplane
from kssdomain.polytope import Halfspace


def H(normal, offset):
    return Hyperplane(normal, offset)


def test_collect_walls_model_a(models):
    walls = set(collect_walls([models["MODEL-A"]]))
    assert walls == {
        H((1, 0), 0), H((0, 1), 0), H((1, 1), 1), H((1, -1), 0), H((1, 0), F(1, 2)), H((0, 1), F(1, 2)),
    }


def test_collect_walls_model_t(models):
    walls = set(collect_walls([models["MODEL-T"]]))
    assert walls == {H((1,), 0), H((1,), 1), H((1,), F(1, 2))}


def test_collect_walls_empty_family():
    assert set(collect_walls([], k=2)) == {H((1, 0), 0), H((0, 1), 0), H((1, 1), 1)}
    with pytest.raises(InputError):
        collect_walls([])


def test_mixed_k_rejected(models):
    family = [models["MODEL-B"], models["MODEL-E"]]
    with pytest.raises(InputError):
        collect_walls(family)
    with pytest.raises(InputError):
        chamber_complex(family)
    assert sorted(split_by_k(family)) == [1, 2]


def test_duplicate_names_rejected(models):
    with pytest.raises(InputError):
        chamber_complex([models["MODEL-B"], models["MODEL-B"]])


def test_chambers_model_t(models):
    cx = chamber_complex([models["MODEL-T"]])
    got = [(c.closure.vertices, c.statuses["MODEL-T"]) for c in cx.chambers]
    assert sorted(got) == [(((0,), (F(1, 2),)), UNSTABLE), (((F(1, 2),), (1,)), KSS)]
    assert len(cx.edges) == 1 and cx.edges[0].changed_models == ("MODEL-T",)


def test_chambers_model_a(models):
    cx = chamber_complex([models["MODEL-A"]])
    assert len(cx.chambers) == 4
    assert partition_volume(cx) == F(1, 2)
    # the domain is a segment, so no full-dimensional chamber is semistable
    assert sorted(c.statuses["MODEL-A"] for c in cx.chambers) == ["NOT_LOG_FANO", "NOT_LOG_FANO", "UNSTABLE", "UNSTABLE"]


FAMILIES = [["MODEL-A"], ["MODEL-B", "MODEL-C"], ["MODEL-D", "MODEL-T"], ["MODEL-E"], ["MODEL-B", "MODEL-C", "MODEL-D", "MODEL-T"]]


@pytest.mark.parametrize("names", FAMILIES)
def test_partition_volume(models, names):
    cx = chamber_complex([models[n] for n in names])
    assert partition_volume(cx) == F(1, math.factorial(cx.k))
    for c in cx.chambers:
        assert c.closure.dim == cx.k
        assert all(v != "0" for v in c.sign_vector)


@pytest.mark.parametrize("names", FAMILIES)
def test_interiors_disjoint(models, names):
    cx = chamber_complex([models[n] for n in names])
    for i, a in enumerate(cx.chambers):
        assert a.closure.contains(a.sample)
        for b in cx.chambers[i + 1:]:
            assert a.sign_vector != b.sign_vector
            assert poly.intersect(a.closure, b.closure).dim < cx.k


@pytest.mark.parametrize("names", FAMILIES)
def test_adjacency(models, names):
    cx = chamber_complex([models[n] for n in names])
    edges = {(e.a, e.b) for e in cx.edges}
    for i, a in enumerate(cx.chambers):
        for j in range(i + 1, len(cx.chambers)):
            b = cx.chambers[j]
            flips = sum(s != t for s, t in zip(a.sign_vector, b.sign_vector))
            shared = poly.intersect(a.closure, b.closure)
            expect = flips == 1 and shared.dim == cx.k - 1
            assert ((i, j) in edges) == expect


@pytest.mark.parametrize("names", FAMILIES)
def test_face_constancy(models, names):
    cx = chamber_complex([models[n] for n in names])
    report = face_constancy_check(cx, samples_per_face=3)
    assert report.passed and report.faces_checked > len(cx.chambers)


def test_joint_face_constancy_mixed_family(models):
    reports = joint_face_constancy_check([models[n] for n in ("MODEL-B", "MODEL-C", "MODEL-E")])
    assert sorted(reports) == [1, 2]
    assert all(r.passed for r in reports.values())


def test_face_constancy_detects_missing_wall(models):
    # build a complex for one table, then check a second table whose wall at
    # 2/3 was never inserted
    t = models["MODEL-T"]
    other = make_table(1, [("E", 1, 3, [0])], [Halfspace.leq([1], 1)], certified=True, name="other")
    assert status_at(other, (F(3, 5),)) != status_at(other, (F(3, 4),))
    cx = chamber_complex([t])
    with pytest.raises(InvariantViolation):
        face_constancy_check(cx, [other], samples_per_face=10)


def test_crossing_model_t(models):
    cx = chamber_complex([models["MODEL-T"]])
    r = crossing_report(cx, "MODEL-T", [F(1, 4)], [F(3, 4)])
    assert [c.t for c in r.crossings] == [F(1, 2)]
    assert r.crossings[0].point == (F(1, 2),) and r.crossings[0].status == KSS
    assert r.status_sequence == [UNSTABLE, KSS]


def test_crossing_model_a(models):
    cx = chamber_complex([models["MODEL-A"]])
    r = crossing_report(cx, "MODEL-A", [F(1, 8), F(1, 4)], [F(1, 4), F(1, 8)])
    assert [c.point for c in r.crossings] == [(F(3, 16), F(3, 16))]
    assert r.crossings[0].walls == (H((1, -1), 0),)
    assert r.crossings[0].status == KSS
    assert r.status_sequence == [UNSTABLE, UNSTABLE]


def test_crossing_model_c(models):
    cx = chamber_complex([models["MODEL-C"]])
    r = crossing_report(cx, "MODEL-C", [F(1, 5)], [F(4, 5)])
    assert r.crossings == () and r.status_sequence == [KSS]


def test_crossing_rejects_point_on_wall(models):
    cx = chamber_complex([models["MODEL-T"]])
    with pytest.raises(DegenerateInputError):
        crossing_report(cx, "MODEL-T", [F(1, 2)], [F(3, 4)])
    with pytest.raises(InputError):
        crossing_report(cx, "MODEL-X", [F(1, 4)], [F(3, 4)])


@pytest.mark.parametrize("names", [["MODEL-A"], ["MODEL-E"], ["MODEL-D", "MODEL-T"]])
def test_status_constant_between_crossings(models, names):
    family = [models[n] for n in names]
    cx = chamber_complex(family)
    rng = random.Random(11)
    simplex = poly.standard_simplex(cx.k)
    for _ in range(10):
        a, b = random_point_in(rng, simplex), random_point_in(rng, simplex)
        if any(h.value(a) == 0 or h.value(b) == 0 for h in cx.walls):
            continue
        for m in family:
            r = crossing_report(cx, m, a, b)
            for t0, t1, st in r.segments:
                for s in (F(1, 5), F(1, 2), F(4, 5)):
                    t = t0 + s * (t1 - t0)
                    x = tuple(p + t * (q - p) for p, q in zip(a, b))
                    assert status_at(m, x) == st


def test_complex_is_deterministic(models):
    family = [models[n] for n in ("MODEL-B", "MODEL-C", "MODEL-D")]
    assert chamber_complex(family).to_json() == chamber_complex(list(reversed(family))).to_json()
