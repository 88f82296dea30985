"""Chamber decomposition of the coefficient simplex for a finite family of pairs.

Walls are the facet hyperplanes of every model's K-semistable domain and
log canonical polytope, together with the facets of the simplex.  The
arrangement they cut out refines the simplex into full-dimensional chambers
on whose faces every model's status is constant.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polytope as poly
from .domains import Model, kss_domain, lc_polytope, random_point_in, status_at, valuation_data
from .errors import DegenerateInputError, InputError, InvariantViolation
from .exact import Hyperplane, QVec, add, format_rat, qvec, scale, sub
from .polytope import Halfspace, Polytope


@dataclass(frozen=True)
class WallSet:
    k: int
    hyperplanes: tuple[Hyperplane, ...]

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)


def _common_k(family: Sequence[Model], k: int | None) -> int:
    ks = {m.k for m in family}
    if k is not None:
        ks.add(k)
    if len(ks) != 1:
        raise InputError(f"family mixes boundary counts k = {sorted(ks)}" if ks else "empty family needs k")
    return ks.pop()


def split_by_k(family: Sequence[Model]) -> dict[int, list[Model]]:
    """Group a family into sub-families sharing the same number of boundaries."""
    groups: dict[int, list[Model]] = defaultdict(list)
    for m in family:
        groups[m.k].append(m)
    return dict(sorted(groups.items()))


def collect_walls(family: Sequence[Model], k: int | None = None) -> WallSet:
    k = _common_k(family, k)
    walls = {h.boundary for h in poly.standard_simplex(k).halfspaces}
    for m in family:
        dom = kss_domain(m).domain
        if not dom.is_empty:
            walls.update(h.boundary for h in dom.halfspaces)
        lc = lc_polytope(m)
        if not lc.is_empty:
            walls.update(h.boundary for h in lc.halfspaces)
    return WallSet(k, tuple(sorted(walls)))


@dataclass(frozen=True)
class Chamber:
    sign_vector: str
    closure: Polytope
    sample: QVec
    statuses: dict

    def to_json(self) -> dict:
        return {
            "sign_vector": self.sign_vector,
            "vertices": [[format_rat(c) for c in v] for v in self.closure.vertices],
            "sample": [format_rat(c) for c in self.sample],
            "statuses": dict(sorted(self.statuses.items())),
        }


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    wall: Hyperplane
    changed_models: tuple[str, ...]

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "wall": self.wall.to_json(), "changed_models": list(self.changed_models)}


@dataclass
class ChamberComplex:
    walls: WallSet
    chambers: list[Chamber]
    models: list[Model]
    edges: list[Edge] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.walls.k

    def model(self, name_or_model) -> Model:
        if not isinstance(name_or_model, str):
            return name_or_model
        for m in self.models:
            if m.name == name_or_model:
                return m
        raise InputError(f"no model named {name_or_model!r} in the family")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "walls": [h.to_json() for h in self.walls],
            "chambers": [c.to_json() for c in self.chambers],
            "edges": [e.to_json() for e in self.edges],
        }


def _sign(v: Fraction) -> str:
    return "+" if v > 0 else "-" if v < 0 else "0"


def _names(family: Sequence[Model]) -> None:
    names = [m.name for m in family]
    if len(set(names)) != len(names):
        raise InputError(f"model names in a family must be distinct: {names}")


def chamber_complex(family: Sequence[Model], k: int | None = None) -> ChamberComplex:
    """Full-dimensional chambers of the wall arrangement inside the simplex.

    Cells are refined one wall at a time; a cell is split only when the wall
    has vertices of the cell strictly on both sides.
    """
    family = list(family)
    _names(family)
    walls = collect_walls(family, k)
    k = walls.k
    cells = [poly.standard_simplex(k)]
    for h in walls:
        nxt = []
        for cell in cells:
            if poly.separates(h, cell):
                for side in (True, False):
                    nxt.append(poly.intersect(cell, extra=[Halfspace(h, side)]))
            else:
                nxt.append(cell)
        cells = nxt

    data = {m.name: valuation_data(m) for m in family}
    chambers = []
    for cell in cells:
        sample = poly.relative_interior_point(cell)
        signs = "".join(_sign(h.value(sample)) for h in walls)
        statuses = {m.name: status_at(m, sample, data[m.name]) for m in family}
        chambers.append(Chamber(signs, cell, sample, statuses))
    chambers.sort(key=lambda c: c.sign_vector)
    cx = ChamberComplex(walls, chambers, family)
    cx.edges = wall_graph(cx)
    return cx


def wall_graph(cx: ChamberComplex) -> list[Edge]:
    """Pairs of chambers whose closures share a facet."""
    edges = []
    k = cx.k
    for i, ci in enumerate(cx.chambers):
        for j in range(i + 1, len(cx.chambers)):
            cj = cx.chambers[j]
            diff = [w for w, (s, t) in enumerate(zip(ci.sign_vector, cj.sign_vector)) if s != t]
            if len(diff) != 1:
                continue
            shared = poly.intersect(ci.closure, cj.closure)
            if shared.dim != k - 1:
                continue
            changed = tuple(sorted(n for n in ci.statuses if ci.statuses[n] != cj.statuses[n]))
            edges.append(Edge(i, j, cx.walls.hyperplanes[diff[0]], changed))
    return edges


def partition_volume(cx: ChamberComplex) -> Fraction:
    return sum((poly.volume(c.closure) for c in cx.chambers), Fraction(0))


@dataclass
class FaceConstancyReport:
    faces_checked: int = 0
    points_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def face_constancy_check(
    cx: ChamberComplex,
    family: Sequence[Model] | None = None,
    samples_per_face: int = 5,
    seed: int = 0,
) -> FaceConstancyReport:
    """Sample relative interiors of every face of every chamber and require
    each model's status to be constant there.

    A violation means a wall is missing from the arrangement; it raises
    :class:`InvariantViolation` carrying the offending points.
    """
    family = list(cx.models if family is None else family)
    if any(m.k != cx.k for m in family):
        raise InputError("family does not match the complex's k")
    rng = random.Random(seed)
    data = {m.name: valuation_data(m) for m in family}
    report = FaceConstancyReport()
    seen = set()
    for ch in cx.chambers:
        for face in poly.faces(ch.closure):
            if face.vertices in seen:
                continue
            seen.add(face.vertices)
            pts = [random_point_in(rng, face) for _ in range(samples_per_face)]
            pts.append(poly.relative_interior_point(face))
            for m in family:
                sts = {status_at(m, x, data[m.name]) for x in pts}
                if len(sts) > 1:
                    report.violations.append((m.name, face.vertices, sorted(sts)))
            report.faces_checked += 1
            report.points_checked += len(pts)
    if report.violations:
        raise InvariantViolation(f"status not constant on {len(report.violations)} faces", witness=report.violations)
    return report


def joint_face_constancy_check(family: Sequence[Model], samples_per_face: int = 5, seed: int = 0):
    """Face constancy for a family mixing different ``k``: one complex per ``k``."""
    return {k: face_constancy_check(chamber_complex(group), group, samples_per_face, seed) for k, group in split_by_k(family).items()}


@dataclass(frozen=True)
class Crossing:
    t: Fraction
    point: QVec
    walls: tuple[Hyperplane, ...]
    status: str


@dataclass(frozen=True)
class CrossingReport:
    model: str
    start: QVec
    end: QVec
    crossings: tuple[Crossing, ...]
    segments: tuple[tuple[Fraction, Fraction, str], ...]

    @property
    def status_sequence(self) -> list[str]:
        return [s for _, _, s in self.segments]

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "from": [format_rat(c) for c in self.start],
            "to": [format_rat(c) for c in self.end],
            "crossings": [
                {
                    "t": format_rat(c.t),
                    "point": [format_rat(v) for v in c.point],
                    "walls": [w.to_json() for w in c.walls],
                    "status": c.status,
                }
                for c in self.crossings
            ],
            "segments": [{"t0": format_rat(a), "t1": format_rat(b), "status": s} for a, b, s in self.segments],
        }


def crossing_report(cx: ChamberComplex, model, w1: Sequence, w2: Sequence) -> CrossingReport:
    """Walk the segment ``[w1, w2]`` and record every wall it crosses."""
    m = cx.model(model)
    w1, w2 = qvec(w1), qvec(w2)
    for w in (w1, w2):
        if len(w) != cx.k:
            raise InputError(f"point {w} does not have {cx.k} coordinates")
        for h in cx.walls:
            if h.value(w) == 0:
                raise DegenerateInputError(f"point {[format_rat(c) for c in w]} lies on wall {h}")
    direction = sub(w2, w1)
    hits: dict[Fraction, list[Hyperplane]] = defaultdict(list)
    for h in cx.walls:
        v1, v2 = h.value(w1), h.value(w2)
        if (v1 > 0) != (v2 > 0):
            hits[v1 / (v1 - v2)].append(h)
    data = valuation_data(m)
    at = lambda t: add(w1, scale(t, direction))  # noqa: E731
    crossings = tuple(
        Crossing(t, at(t), tuple(sorted(hs)), status_at(m, at(t), data)) for t, hs in sorted(hits.items())
    )
    cuts = [Fraction(0)] + [c.t for c in crossings] + [Fraction(1)]
    segments = tuple((a, b, status_at(m, at((a + b) / 2), data)) for a, b in zip(cuts, cuts[1:]))
    return CrossingReport(m.name, w1, w2, crossings, segments)
