"""Exact rational convex polytopes in H- and V-representation.

Polytopes are built from halfspaces; vertices are enumerated from subsets of
``n`` tight constraints, which is adequate for the small, highly degenerate
polytopes this package deals with (a few dozen facets, ambient dimension at
most four or so).  Volumes, barycenters and integrals of affine functions
are computed from a pulling triangulation rooted at a vertex.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .errors import DegenerateInputError, EmptyPolytopeError, InputError, UnboundedError
from .exact import (
    Hyperplane,
    QVec,
    affine_hull,
    det,
    dot,
    format_rat,
    qvec,
    rank,
    rat,
    solve_linear,
    sub,
    unit,
)


@dataclass(frozen=True, order=True)
class Halfspace:
    """``{x : <normal, x> >= offset}`` when ``positive``, else ``<=``."""

    boundary: Hyperplane
    positive: bool = True

    @classmethod
    def geq(cls, normal: Sequence, offset) -> "Halfspace":
        """The halfspace ``<normal, x> >= offset`` in canonical form."""
        normal = qvec(normal)
        offset = rat(offset)
        lead = next((x for x in normal if x != 0), None)
        if lead is None:
            raise DegenerateInputError("halfspace normal must be nonzero")
        return cls(Hyperplane(normal, offset), lead > 0)

    @classmethod
    def leq(cls, normal: Sequence, offset) -> "Halfspace":
        normal = qvec(normal)
        return cls.geq(tuple(-x for x in normal), -rat(offset))

    @property
    def normal(self) -> QVec:
        """Normal of the ``>=`` form."""
        if self.positive:
            return self.boundary.normal
        return tuple(-x for x in self.boundary.normal)

    @property
    def offset(self) -> Fraction:
        return self.boundary.offset if self.positive else -self.boundary.offset

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.offset

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.slack(x) >= 0

    def flipped(self) -> "Halfspace":
        return Halfspace(self.boundary, not self.positive)

    def to_json(self) -> dict:
        return {
            "normal": [format_rat(v) for v in self.normal],
            "offset": format_rat(self.offset),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Halfspace":
        if set(obj) - {"normal", "offset"}:
            raise InputError(f"unknown halfspace keys: {sorted(set(obj) - {'normal', 'offset'})}")
        return cls.geq(qvec(obj["normal"]), rat(obj["offset"]))

    def __str__(self):
        return str(self.boundary).replace(" = ", " >= " if self.positive else " <= ")


def constraint(normal: Sequence, offset) -> Halfspace | bool:
    """Like :meth:`Halfspace.geq` but tolerates a zero normal.

    A zero normal yields ``True`` (constraint always holds) or ``False``
    (never holds) instead of a halfspace.
    """
    normal = qvec(normal)
    if all(x == 0 for x in normal):
        return 0 >= rat(offset)
    return Halfspace.geq(normal, offset)


@dataclass(frozen=True)
class Polytope:
    """A bounded convex polytope with both representations precomputed.

    Do not instantiate directly; use :func:`from_halfspaces`.
    """

    ambient: int
    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[QVec, ...]
    dim: int
    _tight: tuple[frozenset, ...] = field(default=(), repr=False, compare=False)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, x: Sequence) -> bool:
        x = qvec(x)
        if len(x) != self.ambient:
            raise InputError(f"point of length {len(x)} in ambient {self.ambient}")
        if self.is_empty:
            return False
        return all(h.contains(x) for h in self.halfspaces)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "halfspaces": [h.to_json() for h in self.halfspaces],
            "vertices": [[format_rat(c) for c in v] for v in self.vertices],
            "dim": self.dim,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Polytope":
        hs = [Halfspace.from_json(h) for h in obj["halfspaces"]]
        p = from_halfspaces(int(obj["ambient"]), hs)
        if "vertices" in obj:
            given = sorted(qvec(v) for v in obj["vertices"])
            if tuple(given) != p.vertices:
                raise InputError("polytope JSON vertices disagree with its halfspaces")
        return p


def _as_system(hs: Sequence[Halfspace]):
    return [h.normal for h in hs], [h.offset for h in hs]


def _enumerate_vertices(n: int, hs: Sequence[Halfspace]) -> list[QVec]:
    found = set()
    normals = [h.normal for h in hs]
    for subset in itertools.combinations(range(len(hs)), n):
        a = [normals[i] for i in subset]
        if rank(a) != n:
            continue
        x = solve_linear(a, [hs[i].offset for i in subset])
        if x is not None and all(h.contains(x) for h in hs):
            found.add(x)
    return sorted(found)


def _remove_redundant(n: int, hs: list[Halfspace]) -> list[Halfspace]:
    kept = list(hs)
    i = 0
    while i < len(kept):
        h = kept[i]
        others = kept[:i] + kept[i + 1 :]
        a, b = _as_system(others)
        res = lp.minimize(h.normal, a, b)
        if res.status == lp.OPTIMAL and res.value >= h.offset:
            kept.pop(i)
        else:
            i += 1
    return kept


def empty(ambient: int, hs: Iterable[Halfspace] = ()) -> Polytope:
    return Polytope(ambient, tuple(sorted(set(hs))), (), -1)


def from_halfspaces(ambient: int, hs: Iterable[Halfspace | bool]) -> Polytope:
    """Intersect halfspaces into a canonical, irredundant polytope.

    Booleans in ``hs`` stand for constraints with zero normal (see
    :func:`constraint`): ``True`` is dropped, ``False`` makes the result empty.
    """
    items = list(hs)
    if any(h is False for h in items):
        return empty(ambient, [h for h in items if not isinstance(h, bool)])
    hs = sorted({h for h in items if not isinstance(h, bool)})
    for h in hs:
        if h.boundary.ambient != ambient:
            raise InputError(f"halfspace of dimension {h.boundary.ambient} in ambient {ambient}")
    a, b = _as_system(hs)
    if lp.minimize([0] * ambient, a, b).status == lp.INFEASIBLE:
        return empty(ambient, hs)
    for i in range(ambient):
        for sign in (1, -1):
            c = [sign * x for x in unit(ambient, i)]
            if lp.minimize(c, a, b).status == lp.UNBOUNDED:
                raise UnboundedError(f"region is unbounded in direction {'+' if sign < 0 else '-'}x{i + 1}")
    hs = _remove_redundant(ambient, hs)
    verts = _enumerate_vertices(ambient, hs)
    return _assemble(ambient, hs, verts)


def _assemble(ambient: int, hs: Sequence[Halfspace], verts: Sequence[QVec]) -> Polytope:
    verts = tuple(sorted(verts))
    dim = affine_hull(verts)[0] if verts else -1
    tight = tuple(frozenset(i for i, h in enumerate(hs) if h.slack(v) == 0) for v in verts)
    return Polytope(ambient, tuple(hs), verts, dim, tight)


def standard_simplex(k: int) -> Polytope:
    """The closed simplex ``{x >= 0, sum(x) <= 1}`` in Q^k."""
    hs = [Halfspace.geq(unit(k, j), 0) for j in range(k)]
    hs.append(Halfspace.leq([1] * k, 1))
    return from_halfspaces(k, hs)


def box(lower: Sequence, upper: Sequence) -> Polytope:
    lower, upper = qvec(lower), qvec(upper)
    n = len(lower)
    hs = [Halfspace.geq(unit(n, i), lower[i]) for i in range(n)]
    hs += [Halfspace.leq(unit(n, i), upper[i]) for i in range(n)]
    return from_halfspaces(n, hs)


def intersect(*polys: Polytope, extra: Iterable[Halfspace | bool] = ()) -> Polytope:
    ambient = polys[0].ambient
    hs: list = list(extra)
    for p in polys:
        if p.ambient != ambient:
            raise InputError("cannot intersect polytopes of different ambient dimension")
        if p.is_empty:
            return empty(ambient, p.halfspaces)
        hs.extend(p.halfspaces)
    return from_halfspaces(ambient, hs)


def vertices(p: Polytope) -> list[QVec]:
    return list(p.vertices)


# -- triangulation ---------------------------------------------------------


def _face_dim(p: Polytope, idx: frozenset) -> int:
    pts = [p.vertices[i] for i in sorted(idx)]
    base = pts[0]
    diffs = [sub(v, base) for v in pts[1:]]
    return rank(diffs) if diffs else 0


def _facets_of_face(p: Polytope, face: frozenset, fdim: int) -> list[frozenset]:
    subs = set()
    for j in range(len(p.halfspaces)):
        sub_idx = frozenset(i for i in face if j in p._tight[i])
        if sub_idx and sub_idx != face and _face_dim(p, sub_idx) == fdim - 1:
            subs.add(sub_idx)
    return sorted(subs, key=sorted)


def triangulate(p: Polytope, root: int = 0) -> list[tuple[int, ...]]:
    """Pulling triangulation of a full-dimensional polytope.

    Returns simplices as tuples of vertex indices.  ``root`` selects the
    vertex pulled first at the top level; lower levels pull the smallest
    index of each face.
    """
    if p.dim != p.ambient or p.ambient == 0:
        return []
    if not 0 <= root < len(p.vertices):
        raise InputError(f"root vertex {root} out of range")

    def rec(face: frozenset, fdim: int, apex: int) -> list[tuple[int, ...]]:
        if fdim == 0:
            return [(apex,)]
        out = []
        for f in _facets_of_face(p, face, fdim):
            if apex in f:
                continue
            sub_apex = min(f)
            for s in rec(f, fdim - 1, sub_apex):
                out.append((apex,) + s)
        return out

    return rec(frozenset(range(len(p.vertices))), p.ambient, root)


def _simplex_volume(pts: Sequence[QVec]) -> Fraction:
    base = pts[0]
    n = len(base)
    return abs(det([sub(v, base) for v in pts[1:]])) / math.factorial(n)


def volume(p: Polytope, root: int = 0) -> Fraction:
    """Euclidean volume; zero for lower-dimensional polytopes."""
    if p.is_empty or p.dim < p.ambient:
        return Fraction(0)
    if p.ambient == 0:
        return Fraction(1)
    return sum(
        (_simplex_volume([p.vertices[i] for i in s]) for s in triangulate(p, root)),
        Fraction(0),
    )


def barycenter(p: Polytope) -> QVec:
    if p.is_empty or p.dim < p.ambient:
        raise DegenerateInputError("barycenter needs a full-dimensional polytope")
    n = p.ambient
    total = Fraction(0)
    acc = [Fraction(0)] * n
    for s in triangulate(p):
        pts = [p.vertices[i] for i in s]
        vol = _simplex_volume(pts)
        total += vol
        for j in range(n):
            acc[j] += vol * sum(v[j] for v in pts) / (n + 1)
    return tuple(a / total for a in acc)


def integrate_linear(p: Polytope, form: Sequence, constant=0) -> Fraction:
    """``∫_p (<form, y> + constant) dy``, exactly."""
    form = qvec(form)
    constant = rat(constant)
    if p.is_empty or p.dim < p.ambient:
        return Fraction(0)
    n = p.ambient
    total = Fraction(0)
    for s in triangulate(p):
        pts = [p.vertices[i] for i in s]
        mean = sum((dot(form, v) for v in pts), Fraction(0)) / (n + 1) + constant
        total += _simplex_volume(pts) * mean
    return total


# -- optimisation and predicates -------------------------------------------


def minimize_linear(p: Polytope, form: Sequence) -> tuple[Fraction, QVec]:
    """Minimum of ``<form, x>`` over ``p`` and the lexicographically first
    vertex attaining it."""
    form = qvec(form)
    if p.is_empty:
        raise EmptyPolytopeError("cannot optimise over an empty polytope")
    a, b = _as_system(p.halfspaces)
    res = lp.minimize(form, a, b)
    if res.status != lp.OPTIMAL:
        raise DegenerateInputError(f"LP returned {res.status} on a bounded nonempty polytope")
    argmin = next(v for v in p.vertices if dot(form, v) == res.value)
    return res.value, argmin


def maximize_linear(p: Polytope, form: Sequence) -> tuple[Fraction, QVec]:
    value, argmax = minimize_linear(p, tuple(-x for x in qvec(form)))
    return -value, argmax


def separates(h: Hyperplane, p: Polytope) -> bool:
    """True iff ``p`` has vertices strictly on both sides of ``h``."""
    if h.ambient != p.ambient:
        raise InputError("hyperplane and polytope dimensions differ")
    vals = [h.value(v) for v in p.vertices]
    return any(v > 0 for v in vals) and any(v < 0 for v in vals)


def equal(p: Polytope, q: Polytope) -> bool:
    if p.ambient != q.ambient:
        return False
    if p.is_empty or q.is_empty:
        return p.is_empty and q.is_empty
    return all(q.contains(v) for v in p.vertices) and all(p.contains(v) for v in q.vertices)


def faces(p: Polytope, dim: int | None = None) -> list[Polytope]:
    """Nonempty faces of ``p`` (of dimension ``dim`` if given), including ``p``.

    Each face is described by the set of halfspaces tight on it; these are
    the intersections of the tight sets of its vertices.
    """
    if p.is_empty:
        return []
    tight_sets = {t for t in p._tight}
    frontier = set(tight_sets)
    while frontier:
        new = set()
        for s, t in itertools.product(frontier, tight_sets):
            u = s & t
            if u not in tight_sets:
                new.add(u)
        tight_sets |= new
        frontier = new
    common = frozenset.intersection(*p._tight)
    tight_sets.add(common)
    by_vertices = {}
    for s in tight_sets:
        vidx = frozenset(i for i, t in enumerate(p._tight) if s <= t)
        if vidx:
            by_vertices.setdefault(vidx, s)
    out = []
    for vidx, s in sorted(by_vertices.items(), key=lambda kv: sorted(kv[0])):
        if dim is not None and _face_dim(p, vidx) != dim:
            continue
        hs = list(p.halfspaces) + [p.halfspaces[j].flipped() for j in s]
        out.append(from_halfspaces(p.ambient, hs))
    out.sort(key=lambda f: (f.dim, f.vertices))
    return out


def relative_interior_point(p: Polytope) -> QVec:
    """Average of the vertices; lies in the relative interior."""
    if p.is_empty:
        raise EmptyPolytopeError("empty polytope has no interior point")
    n = len(p.vertices)
    return tuple(sum(v[j] for v in p.vertices) / n for j in range(p.ambient))
