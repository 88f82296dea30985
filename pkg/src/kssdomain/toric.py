"""Toric Fano models and invariants of toric divisorial valuations.

A model is given by the rays of a complete fan in ``N = Z^d``.  Its
anticanonical polytope is ``P = {y : <y, r_i> >= -1}`` in ``M ⊗ Q`` and the
maximal cones are read off from the vertices of ``P``.  A lattice vector
``u`` in ``N`` defines the monomial valuation ``v_u``; all invariants below
are evaluated on these valuations.

For ``u`` in the simplicial cone spanned by rays ``r_i`` write
``u = sum(lam_i r_i)``.  Then

* log discrepancy ``A(u) = sum(lam_i) = -<u, v_sigma>``
* vanishing order of ``D = sum(a_i D_i)`` is ``sum(lam_i a_i)``
* ``S(u) = <u, barycenter(P)> - min_P <u, .>``
* ``T(u) = max_P <u, .> - min_P <u, .>``
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polytope as poly
from .errors import (
    DomainError,
    InputError,
    InvariantViolation,
    ModelValidationError,
    UnboundedError,
)
from .exact import QVec, affine_hull, dot, format_rat, qvec, rank, solve_linear
from .polytope import Halfspace, Polytope


@dataclass(frozen=True)
class Cone:
    vertex: QVec  # the vertex of P dual to this cone
    rays: tuple[int, ...]  # indices into the model's ray list
    inverse: tuple[QVec, ...]  # rows of R^-1 where R has the rays as columns

    def coordinates(self, u: QVec) -> QVec:
        return tuple(dot(row, u) for row in self.inverse)


@dataclass(frozen=True)
class ToricFanoModel:
    d: int
    rays: tuple[tuple[int, ...], ...]
    P: Polytope
    cones: tuple[Cone, ...]
    degree: Fraction
    barycenter: QVec

    def ray_label(self, i: int) -> str:
        return "ray(" + ",".join(str(c) for c in self.rays[i]) + ")"

    def ray_index(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < len(self.rays):
                raise InputError(f"ray index {label} out of range")
            return label
        for i in range(len(self.rays)):
            if self.ray_label(i) == label:
                return i
        raise InputError(f"unknown valuation label {label!r}")


@dataclass(frozen=True)
class ToricDivisor:
    """``D = sum(a_i D_{r_i})`` with a certificate that ``D ~ -K_X``."""

    name: str
    coeffs: QVec
    witness: QVec  # m with a_i - 1 = <m, r_i>
    index: int  # smallest I with I*m and all I*a_i integral


@dataclass(frozen=True)
class PairModel:
    base: ToricFanoModel
    divisors: tuple[ToricDivisor, ...]
    name: str = "model"
    kind: str = field(default="toric", init=False)

    @property
    def k(self) -> int:
        return len(self.divisors)

    @property
    def certified(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {
            "kind": "toric",
            "name": self.name,
            "dim": self.base.d,
            "rays": [list(r) for r in self.base.rays],
            "divisors": [
                {"name": D.name, "coeffs": [format_rat(a) for a in D.coeffs]} for D in self.divisors
            ],
        }


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def build_fano(rays: Sequence[Sequence[int]]) -> ToricFanoModel:
    """Validate a fan and derive its anticanonical polytope and cones."""
    if not rays:
        raise InputError("a model needs at least one ray")
    try:
        rays = tuple(tuple(int(c) for c in r) for r in rays)
    except (TypeError, ValueError) as exc:
        raise InputError(f"rays must be integer vectors: {exc}") from None
    if any(isinstance(c, bool) for r in rays for c in r):
        raise InputError("rays must be integer vectors")
    d = len(rays[0])
    if d == 0 or any(len(r) != d for r in rays):
        raise InputError("rays must be nonempty vectors of equal length")
    for r in rays:
        if math.gcd(*r) != 1:
            raise ModelValidationError(ModelValidationError.NON_PRIMITIVE_RAY, f"ray {list(r)} is not primitive")
    if len(set(rays)) != len(rays):
        raise ModelValidationError(ModelValidationError.NOT_FANO, "repeated ray")

    hs = [Halfspace.geq(r, -1) for r in rays]
    try:
        P = poly.from_halfspaces(d, hs)
    except UnboundedError:
        raise ModelValidationError(ModelValidationError.NOT_FANO, "anticanonical polytope is unbounded") from None
    # 0 satisfies every constraint strictly, so it is always interior once P is bounded
    for i, r in enumerate(rays):
        on_facet = [v for v in P.vertices if dot(r, v) == -1]
        if not on_facet or affine_hull(on_facet)[0] != d - 1:
            raise ModelValidationError(
                ModelValidationError.NOT_FANO,
                f"ray {list(r)} does not span a facet of the anticanonical polytope",
            )
    cones = []
    for v in P.vertices:
        idx = tuple(i for i, r in enumerate(rays) if dot(r, v) == -1)
        if len(idx) != d or rank([rays[i] for i in idx]) != d:
            raise ModelValidationError(
                ModelValidationError.NON_SIMPLICIAL_CONE,
                f"cone at vertex {[format_rat(c) for c in v]} has {len(idx)} rays",
            )
        cols = [qvec(rays[i]) for i in idx]
        # R has the rays as columns; invert it column by column
        R = [tuple(cols[j][row] for j in range(d)) for row in range(d)]
        inv_cols = [solve_linear(R, [Fraction(int(row == c)) for row in range(d)]) for c in range(d)]
        inverse = tuple(tuple(inv_cols[c][row] for c in range(d)) for row in range(d))
        cones.append(Cone(v, idx, inverse))
    degree = math.factorial(d) * poly.volume(P)
    return ToricFanoModel(d, rays, P, tuple(cones), degree, poly.barycenter(P))


def build_divisor(base: ToricFanoModel, coeffs: Sequence, name: str) -> ToricDivisor:
    coeffs = qvec(coeffs)
    if len(coeffs) != len(base.rays):
        raise InputError(f"divisor {name!r} has {len(coeffs)} coefficients for {len(base.rays)} rays")
    if any(a < 0 for a in coeffs):
        raise ModelValidationError(ModelValidationError.NOT_EFFECTIVE, f"divisor {name!r} has a negative coefficient")
    m = solve_linear([qvec(r) for r in base.rays], [a - 1 for a in coeffs])
    if m is None:
        raise ModelValidationError(
            ModelValidationError.NOT_ANTICANONICAL, f"divisor {name!r} is not linearly equivalent to -K_X"
        )
    index = 1
    for q in itertools.chain(m, coeffs):
        index = _lcm(index, q.denominator)
    return ToricDivisor(name, coeffs, m, index)


def validate_model(rays, divisors=(), name: str = "model") -> PairModel:
    """Build a :class:`PairModel` from rays and divisor coefficient lists.

    ``divisors`` holds coefficient lists or ``(name, coeffs)`` pairs.
    """
    base = build_fano(rays)
    built = []
    for j, D in enumerate(divisors):
        if isinstance(D, tuple) and len(D) == 2 and isinstance(D[0], str):
            dname, coeffs = D
        else:
            dname, coeffs = f"D{j + 1}", D
        built.append(build_divisor(base, coeffs, dname))
    return PairModel(base, tuple(built), name)


def _base(model) -> ToricFanoModel:
    return model.base if isinstance(model, PairModel) else model


def _check_u(u) -> QVec:
    u = qvec(u)
    if all(c == 0 for c in u):
        raise DomainError("valuation vector u must be nonzero")
    return u


def cone_of(model, u) -> tuple[Cone, QVec]:
    """A maximal cone containing ``u`` and the coordinates of ``u`` in its rays."""
    X = _base(model)
    u = _check_u(u)
    if len(u) != X.d:
        raise InputError(f"u has length {len(u)}, model has dimension {X.d}")
    for cone in X.cones:
        lam = cone.coordinates(u)
        if all(c >= 0 for c in lam):
            return cone, lam
    raise InvariantViolation("fan does not cover u", witness=u)  # unreachable for complete fans


def log_discrepancy(model, u) -> Fraction:
    """``A_X(v_u)``, computed from the cone coordinates and from the dual vertex."""
    cone, lam = cone_of(model, u)
    via_rays = sum(lam, Fraction(0))
    via_vertex = -dot(qvec(u), cone.vertex)
    if via_rays != via_vertex:
        raise InvariantViolation(f"log discrepancy routes disagree: {via_rays} vs {via_vertex}", witness=u)
    return via_rays


def div_order(model, divisor, u) -> Fraction:
    """Vanishing order of a torus-invariant divisor along ``v_u``."""
    X = _base(model)
    if isinstance(divisor, int):
        divisor = model.divisors[divisor]
    coeffs = divisor.coeffs if isinstance(divisor, ToricDivisor) else qvec(divisor)
    if len(coeffs) != len(X.rays):
        raise InputError("divisor coefficient count does not match the rays")
    cone, lam = cone_of(X, u)
    return sum((l * coeffs[i] for l, i in zip(lam, cone.rays)), Fraction(0))


def _min_max(X: ToricFanoModel, u: QVec) -> tuple[Fraction, Fraction]:
    vals = [dot(u, v) for v in X.P.vertices]
    return min(vals), max(vals)


def s_invariant(model, u) -> Fraction:
    X = _base(model)
    u = _check_u(u)
    lo, _ = _min_max(X, u)
    return dot(u, X.barycenter) - lo


def t_invariant(model, u) -> Fraction:
    X = _base(model)
    u = _check_u(u)
    lo, hi = _min_max(X, u)
    return hi - lo


def lattice_points(p: Polytope, m: int = 1) -> list[tuple[int, ...]]:
    """Lattice points of the dilation ``m * p`` by a bounding-box scan."""
    if p.is_empty:
        return []
    n = p.ambient
    lows = [math.ceil(min(m * v[j] for v in p.vertices)) for j in range(n)]
    highs = [math.floor(max(m * v[j] for v in p.vertices)) for j in range(n)]
    out = []
    for pt in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if all(dot(h.normal, pt) >= m * h.offset for h in p.halfspaces):
            out.append(pt)
    return out


def s_m_invariant(model, u, m: int) -> Fraction:
    """Vanishing order of an optimal ``m``-basis type divisor along ``v_u``.

    The monomial basis of ``H^0(-m K_X)`` is adapted to every toric
    valuation, so the maximum over basis type divisors is the average of
    ``<u, y> - m min_P <u, .>`` over the lattice points ``y`` of ``mP``,
    divided by ``m``.
    """
    X = _base(model)
    u = _check_u(u)
    if int(m) != m or m < 1:
        raise DomainError("m must be a positive integer")
    lo, _ = _min_max(X, u)
    pts = lattice_points(X.P, m)
    total = sum((dot(u, y) - m * lo for y in pts), Fraction(0))
    return total / (m * len(pts))


def twisted_polytope(model: PairModel, x) -> Polytope:
    """Polytope of the divisor class ``-(K_X + sum x_j D_j)``.

    Its facet offsets are ``1 - sum_j x_j a_{j,i}``; for ``sum(x) < 1`` it is a
    translate of ``(1 - sum(x)) P``.
    """
    X = model.base
    x = qvec(x)
    hs = []
    for i, r in enumerate(X.rays):
        b = 1 - sum((xj * D.coeffs[i] for xj, D in zip(x, model.divisors)), Fraction(0))
        hs.append(Halfspace.geq(r, -b))
    return poly.from_halfspaces(X.d, hs)


def s_invariant_of_pair(model: PairModel, x, u) -> Fraction:
    """``S_{X, sum x_j D_j}(v_u)`` straight from the twisted polytope.

    Independent of :func:`s_invariant`; used to check the scaling relation
    ``S_{X,cD} = (1 - c) S_X``.
    """
    u = _check_u(u)
    Q = twisted_polytope(model, x)
    if Q.dim < Q.ambient:
        return Fraction(0)
    lo, _ = poly.minimize_linear(Q, u)
    return dot(u, poly.barycenter(Q)) - lo
