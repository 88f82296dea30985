"""Exact rational linear algebra and rational hyperplane constructions.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of such rows.  Nothing here touches floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateInputError, InputError

Rat = Fraction
QVec = tuple  # tuple[Fraction, ...]
QMat = tuple  # tuple[QVec, ...]

_RAT_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def rat(value) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction.

    Floats and decimal strings are refused so that no inexact value can slip
    into the core.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RAT_RE.match(value):
            raise InputError(f"not an exact rational string: {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"zero denominator: {value!r}") from None
    raise InputError(f"not a rational: {value!r}")


def qvec(values: Iterable) -> QVec:
    return tuple(rat(v) for v in values)


def qmat(rows: Iterable[Iterable]) -> QMat:
    m = tuple(qvec(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise InputError("matrix rows have unequal length")
    return m


def format_rat(q: Fraction) -> str:
    """``"p/q"`` or ``"p"``; the inverse of :func:`rat`."""
    return str(q)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> QVec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> QVec:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> QVec:
    return tuple(c * x for x in a)


def zeros(n: int) -> QVec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> QVec:
    return tuple(Fraction(int(j == i)) for j in range(n))


def identity(n: int) -> QMat:
    return tuple(unit(n, i) for i in range(n))


def matvec(a: Sequence[Sequence], x: Sequence) -> QVec:
    return tuple(dot(row, x) for row in a)


def rref(a: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [list(r) for r in a]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        m[row] = [x / p for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(a)[1])


def solve_linear(a: Sequence[Sequence], b: Sequence) -> QVec | None:
    """Solve ``a @ x = b`` exactly.

    Returns None for an inconsistent system.  Free variables of an
    under-determined system are set to zero.
    """
    a = qmat(a)
    b = qvec(b)
    if len(a) != len(b):
        raise InputError(f"{len(a)} rows but {len(b)} right-hand entries")
    if not a:
        return ()
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = red[r][n]
    return tuple(x)


def nullspace(a: Sequence[Sequence[Fraction]], n: int) -> list[QVec]:
    """Basis of ``{x : a @ x = 0}`` for an ``? x n`` matrix."""
    if not a:
        return list(identity(n))
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, col in enumerate(pivots):
            x[col] = -red[r][f]
        basis.append(tuple(x))
    return basis


def primitive(v: Sequence[Fraction]) -> QVec:
    """Positive rescaling of a nonzero rational vector to coprime integers."""
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        raise DegenerateInputError("zero vector has no primitive form")
    return tuple(Fraction(x // g) for x in ints)


@dataclass(frozen=True, order=True)
class Hyperplane:
    """``{x : <normal, x> = offset}`` in canonical integer form.

    The normal has coprime integer entries and its first nonzero entry is
    positive, so two hyperplanes are equal as sets iff they compare equal.
    """

    normal: QVec
    offset: Fraction

    def __post_init__(self):
        normal = qvec(self.normal)
        offset = rat(self.offset)
        if all(x == 0 for x in normal):
            raise DegenerateInputError("hyperplane normal must be nonzero")
        scaled, factor = _canonical_scaling(normal + (offset,), fix_sign=True)
        object.__setattr__(self, "normal", scaled[:-1])
        object.__setattr__(self, "offset", scaled[-1])

    @property
    def ambient(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        """Signed residual ``<normal, x> - offset``."""
        return dot(self.normal, x) - self.offset

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.value(x) == 0

    def to_json(self) -> dict:
        return {
            "normal": [format_rat(v) for v in self.normal],
            "offset": format_rat(self.offset),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Hyperplane":
        return cls(qvec(obj["normal"]), rat(obj["offset"]))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.normal):
            if c:
                terms.append(f"{c}*x{i + 1}")
        return " + ".join(terms) + f" = {self.offset}"


def _canonical_scaling(coeffs: QVec, fix_sign: bool) -> tuple[QVec, Fraction]:
    """Scale ``coeffs`` so the leading (normal) part is a primitive integer vector.

    Only the normal part (all but the last entry) determines the scaling;
    the offset follows along and may stay fractional.
    """
    normal = coeffs[:-1]
    prim = primitive(normal)
    i = next(j for j, x in enumerate(normal) if x != 0)
    factor = prim[i] / normal[i]
    if fix_sign and prim[i] < 0:
        factor = -factor
    return tuple(factor * c for c in coeffs), factor


def hyperplane_through_points(points: Sequence[Sequence]) -> Hyperplane:
    """The unique hyperplane through ``n`` affinely independent points of Q^n."""
    pts = [qvec(p) for p in points]
    if not pts:
        raise DegenerateInputError("no points given")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise InputError("points of mixed dimension")
    if len(pts) != n:
        raise DegenerateInputError(f"need exactly {n} points in ambient dimension {n}")
    # rows (p, -1) . (normal, offset) = 0
    rows = [list(p) + [Fraction(-1)] for p in pts]
    kernel = nullspace(rows, n + 1)
    if len(kernel) != 1 or all(x == 0 for x in kernel[0][:n]):
        raise DegenerateInputError("points are affinely dependent")
    sol = kernel[0]
    return Hyperplane(sol[:n], sol[n])


def affine_hull(points: Sequence[Sequence]) -> tuple[int, list[Hyperplane]]:
    """Dimension of the affine hull and canonical hyperplanes cutting it out."""
    pts = [qvec(p) for p in points]
    if not pts:
        raise InputError("affine hull of an empty point set")
    n = len(pts[0])
    base = pts[0]
    diffs = [sub(p, base) for p in pts[1:]]
    dim = rank(diffs) if diffs else 0
    normals = nullspace(diffs, n) if diffs else list(identity(n))
    # normals span the orthogonal complement; reduce them to a canonical basis
    if normals:
        red, _ = rref(normals)
        normals = [tuple(r) for r in red if any(x != 0 for x in r)]
    hyperplanes = sorted({Hyperplane(v, dot(v, base)) for v in normals})
    return dim, hyperplanes


def vertex_from_facets(hyperplanes: Sequence[Hyperplane]) -> QVec:
    """The unique common point of a set of rational hyperplanes."""
    hs = list(hyperplanes)
    if not hs:
        raise DegenerateInputError("no hyperplanes given")
    n = hs[0].ambient
    a = [h.normal for h in hs]
    if rank(a) != n:
        raise DegenerateInputError("hyperplanes do not meet in a single point")
    x = solve_linear(a, [h.offset for h in hs])
    if x is None:
        raise DegenerateInputError("hyperplanes have no common point")
    return x


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [list(r) for r in a]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return result
