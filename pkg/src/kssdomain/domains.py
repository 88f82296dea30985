"""K-semistable domains of pairs ``(X, sum x_j D_j)`` with ``D_j ~ -K_X``.

Every valuation ``E`` (a fan ray for toric models, a row for valuation
tables) contributes the affine constraint

    beta(x) = A(E) - sum_j x_j ord_E(D_j) - (1 - sum_j x_j) S(E) >= 0

and the domain is the intersection of these halfspaces with the log
canonical region and the closed simplex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import polytope as poly
from . import toric
from .errors import DomainError, InputError, InvariantViolation, ModelValidationError
from .exact import Hyperplane, QVec, dot, format_rat, qvec, rat, unit
from .polytope import Halfspace, Polytope, constraint
from .toric import PairModel

KSS = "KSS"
UNSTABLE = "UNSTABLE"
CY_LC = "CY_LC"
CY_NOT_LC = "CY_NOT_LC"
NOT_LOG_FANO = "NOT_LOG_FANO"
STATUSES = (KSS, UNSTABLE, CY_LC, CY_NOT_LC, NOT_LOG_FANO)
SEMISTABLE = frozenset({KSS, CY_LC})


@dataclass(frozen=True)
class TableRow:
    label: str
    A: Fraction
    S: Fraction
    ord: QVec


@dataclass(frozen=True)
class ValuationTable:
    """Valuation data for a pair that is not given torically.

    ``certified`` records the user's claim that the rows exhaust the
    valuations that matter; without it the computed domain is only an outer
    bound.
    """

    k: int
    rows: tuple[TableRow, ...]
    lc_halfspaces: tuple[Halfspace, ...] = ()
    certified: bool = False
    name: str = "table"
    kind: str = field(default="table", init=False)

    def __post_init__(self):
        labels = [r.label for r in self.rows]
        if len(set(labels)) != len(labels):
            raise InputError("valuation table labels must be distinct")
        for r in self.rows:
            if len(r.ord) != self.k:
                raise InputError(f"row {r.label!r} has {len(r.ord)} orders, expected {self.k}")
            if r.A <= 0 or r.S <= 0 or any(o < 0 for o in r.ord):
                raise ModelValidationError("INVALID_TABLE_ROW", f"row {r.label!r} needs A > 0, S > 0, ord >= 0")
        for h in self.lc_halfspaces:
            if h.boundary.ambient != self.k:
                raise InputError("lc halfspace dimension does not match k")

    def to_json(self) -> dict:
        return {
            "kind": "table",
            "name": self.name,
            "k": self.k,
            "rows": [
                {
                    "label": r.label,
                    "A": format_rat(r.A),
                    "S": format_rat(r.S),
                    "ord": [format_rat(o) for o in r.ord],
                }
                for r in self.rows
            ],
            "lc_halfspaces": [h.to_json() for h in self.lc_halfspaces],
            "certified": self.certified,
        }


Model = Union[PairModel, ValuationTable]


def make_table(k, rows, lc_halfspaces=(), certified=False, name="table") -> ValuationTable:
    """Convenience constructor taking plain tuples ``(label, A, S, ord)``."""
    built = tuple(TableRow(str(lab), rat(A), rat(S), qvec(o)) for lab, A, S, o in rows)
    return ValuationTable(int(k), built, tuple(lc_halfspaces), bool(certified), name)


@dataclass(frozen=True)
class BetaForm:
    """``beta(x) = constant + <coeffs, x>`` for one valuation."""

    label: str
    constant: Fraction
    coeffs: QVec

    def __call__(self, x: Sequence) -> Fraction:
        return self.constant + dot(self.coeffs, qvec(x))

    def halfspace(self) -> Halfspace | bool:
        return constraint(self.coeffs, -self.constant)


def valuation_data(model: Model) -> list[tuple[str, Fraction, Fraction, QVec]]:
    """``(label, A, S, ord)`` for every valuation the model tests against."""
    if isinstance(model, ValuationTable):
        return [(r.label, r.A, r.S, r.ord) for r in model.rows]
    X = model.base
    out = []
    for i, r in enumerate(X.rays):
        A = toric.log_discrepancy(X, r)
        S = toric.s_invariant(X, r)
        ords = tuple(toric.div_order(X, D, r) for D in model.divisors)
        out.append((X.ray_label(i), A, S, ords))
    return out


def beta_form(model: Model, valuation) -> BetaForm:
    data = valuation_data(model)
    if isinstance(model, PairModel):
        i = model.base.ray_index(valuation)
        label, A, S, ords = data[i]
    else:
        if isinstance(valuation, int) and not isinstance(valuation, bool):
            if not 0 <= valuation < len(data):
                raise InputError(f"row index {valuation} out of range")
            label, A, S, ords = data[valuation]
        else:
            match = [d for d in data if d[0] == valuation]
            if not match:
                raise InputError(f"unknown valuation label {valuation!r}")
            label, A, S, ords = match[0]
    return BetaForm(label, A - S, tuple(S - o for o in ords))


def beta_forms(model: Model) -> list[BetaForm]:
    return [BetaForm(lab, A - S, tuple(S - o for o in ords)) for lab, A, S, ords in valuation_data(model)]


def _simplex_constraints(k: int) -> list[tuple[str, Halfspace]]:
    out = [(f"simplex:x{j + 1}>=0", Halfspace.geq(unit(k, j), 0)) for j in range(k)]
    out.append(("simplex:sum<=1", Halfspace.leq([1] * k, 1)))
    return out


def _lc_constraints(model: Model) -> list[tuple[str, Halfspace | bool]]:
    if isinstance(model, ValuationTable):
        return [(f"lc:{i}", h) for i, h in enumerate(model.lc_halfspaces)]
    X = model.base
    out = []
    for i in range(len(X.rays)):
        row = [D.coeffs[i] for D in model.divisors]
        out.append((f"lc:{X.ray_label(i)}", constraint([-a for a in row], -1)))
    return out


def lc_polytope(model: Model) -> Polytope:
    """Coefficients ``x`` in the closed simplex for which the pair is log canonical."""
    hs = [h for _, h in _lc_constraints(model)] + [h for _, h in _simplex_constraints(model.k)]
    return poly.from_halfspaces(model.k, hs)


def _lc_slacks(model: Model, x: QVec) -> list[Fraction]:
    if isinstance(model, ValuationTable):
        return [h.slack(x) for h in model.lc_halfspaces]
    X = model.base
    return [1 - sum((xj * D.coeffs[i] for xj, D in zip(x, model.divisors)), Fraction(0)) for i in range(len(X.rays))]


@dataclass(frozen=True)
class KssDomainResult:
    model: str
    domain: Polytope
    in_E: bool
    mu: Fraction | None
    gap: Fraction | None
    interval: tuple[Fraction, Fraction] | None
    certified: bool
    facet_provenance: tuple[tuple[Hyperplane, tuple[str, ...]], ...]
    # set when the domain's relative interior misses the klt locus with sum(x) < 1,
    # i.e. the closed intersection may differ from the closure of the semistable locus
    closure_flag: bool = False

    def to_json(self) -> dict:
        out = {"model": self.model}
        out.update(self.domain.to_json())
        out["in_E"] = self.in_E
        out["mu"] = None if self.mu is None else format_rat(self.mu)
        out["gap"] = None if self.gap is None else format_rat(self.gap)
        out["interval"] = None if self.interval is None else [format_rat(c) for c in self.interval]
        out["certified"] = self.certified
        out["closure_flag"] = self.closure_flag
        out["facet_provenance"] = [
            {"hyperplane": h.to_json(), "sources": list(src)} for h, src in self.facet_provenance
        ]
        return out


def _constraints(model: Model) -> list[tuple[str, Halfspace | bool]]:
    out: list[tuple[str, Halfspace | bool]] = list(_simplex_constraints(model.k))
    out += _lc_constraints(model)
    out += [(b.label, b.halfspace()) for b in beta_forms(model)]
    return out


def is_klt_point(model: Model, x: Sequence) -> bool:
    return all(s > 0 for s in _lc_slacks(model, qvec(x)))


def kss_domain(model: Model) -> KssDomainResult:
    k = model.k
    if k < 1:
        raise InputError("a K-semistable domain needs at least one boundary divisor")
    cons = _constraints(model)
    domain = poly.from_halfspaces(k, [h for _, h in cons])
    provenance = []
    for h in domain.halfspaces:
        srcs = tuple(lab for lab, c in cons if isinstance(c, Halfspace) and c.boundary == h.boundary)
        provenance.append((h.boundary, srcs))
    provenance = tuple(sorted(set(provenance)))
    if domain.is_empty:
        return KssDomainResult(model.name, domain, False, None, None, None, model.certified, provenance, False)
    mu, _ = poly.minimize_linear(domain, [1] * k)
    interval = None
    if k == 1:
        interval = (domain.vertices[0][0], domain.vertices[-1][0])
    inner = poly.relative_interior_point(domain)
    flag = not (sum(inner) < 1 and is_klt_point(model, inner))
    return KssDomainResult(model.name, domain, mu < 1, mu, 1 - mu, interval, model.certified, provenance, flag)


@dataclass(frozen=True)
class DeltaReport:
    x: QVec
    status: str
    delta: Fraction | None = None
    delta_tilde: Fraction | None = None
    minimizer: str | None = None

    def to_json(self) -> dict:
        return {
            "x": [format_rat(c) for c in self.x],
            "status": self.status,
            "delta": None if self.delta is None else format_rat(self.delta),
            "delta_tilde": None if self.delta_tilde is None else format_rat(self.delta_tilde),
            "minimizer": self.minimizer,
        }


def _check_point(model: Model, x) -> QVec:
    x = qvec(x)
    if len(x) != model.k:
        raise InputError(f"point has {len(x)} coordinates, model has k = {model.k}")
    if any(c < 0 for c in x) or sum(x) > 1:
        raise DomainError("point lies outside the closed simplex")
    return x


def delta_at(model: Model, x: Sequence = (), data=None) -> DeltaReport:
    """Classify the pair at coefficient vector ``x``.

    For ``sum(x) < 1`` at a klt point this is the minimum of
    ``A_{X,sum x D}(E) / ((1 - sum x) S_X(E))`` over the model's valuations.
    ``data`` may carry precomputed :func:`valuation_data`.
    """
    x = _check_point(model, x)
    total = sum(x, Fraction(0))
    slacks = _lc_slacks(model, x)
    if total == 1:
        status = CY_LC if all(s >= 0 for s in slacks) else CY_NOT_LC
        return DeltaReport(x, status)
    if not all(s > 0 for s in slacks):
        return DeltaReport(x, NOT_LOG_FANO)
    if data is None:
        data = valuation_data(model)
    best = None
    arg = None
    for label, A, S, ords in data:
        ratio = (A - dot(x, ords)) / ((1 - total) * S)
        # ties go to the lowest label so reports are deterministic
        if best is None or (ratio, label) < (best, arg):
            best, arg = ratio, label
    status = KSS if best >= 1 else UNSTABLE
    return DeltaReport(x, status, best, min(best, Fraction(1)), arg)


def status_at(model: Model, x: Sequence, data=None) -> str:
    return delta_at(model, x, data).status


def random_simplex_point(rng: random.Random, k: int, denom: int = 48) -> QVec:
    """Uniform-ish rational point of the closed simplex with denominator ``denom``."""
    cuts = sorted(rng.randint(0, denom) for _ in range(k))
    parts = [cuts[0]] + [b - a for a, b in zip(cuts, cuts[1:])]
    return tuple(Fraction(p, denom) for p in parts)


def random_point_in(rng: random.Random, p: Polytope) -> QVec:
    """Random rational point of ``p`` with strictly positive weight on every vertex."""
    w = [rng.randint(1, 20) for _ in p.vertices]
    tot = sum(w)
    return tuple(sum(Fraction(wi, tot) * v[j] for wi, v in zip(w, p.vertices)) for j in range(p.ambient))


@dataclass
class ConsistencyReport:
    model: str
    inside_checked: int = 0
    outside_checked: int = 0
    scaling_checked: int = 0
    passed: bool = True


def consistency_check(model: Model, samples: int = 100, seed: int = 0) -> ConsistencyReport:
    """Cross-check pointwise classification against domain membership.

    Raises :class:`InvariantViolation` with the offending point on mismatch.
    In toric mode also checks ``S_{X, sum x D} = (1 - sum x) S_X`` against
    the twisted polytope, and recomputes delta from it.
    """
    rng = random.Random(seed)
    res = kss_domain(model)
    dom = res.domain
    data = valuation_data(model)
    report = ConsistencyReport(model.name)
    inside = list(dom.vertices)
    while not dom.is_empty and len(inside) < samples // 2:
        inside.append(random_point_in(rng, dom))
    for x in inside:
        st = status_at(model, x, data)
        if st not in SEMISTABLE:
            raise InvariantViolation(f"point inside the domain classified {st}", witness=x)
        report.inside_checked += 1
    tries = 0
    while report.outside_checked < samples - samples // 2 and tries < 50 * samples:
        tries += 1
        x = random_simplex_point(rng, model.k)
        if dom.contains(x):
            continue
        st = status_at(model, x, data)
        if st in SEMISTABLE:
            raise InvariantViolation(f"point outside the domain classified {st}", witness=x)
        report.outside_checked += 1

    if isinstance(model, PairModel):
        X = model.base
        for _ in range(max(1, samples // 10)):
            x = random_simplex_point(rng, model.k)
            total = sum(x)
            if total == 1 or not is_klt_point(model, x):
                continue
            ratios = []
            for (label, A, S, ords), r in zip(data, X.rays):
                twisted = toric.s_invariant_of_pair(model, x, r)
                if twisted != (1 - total) * S:
                    raise InvariantViolation(f"scaling relation fails on {label}", witness=x)
                ratios.append((A - dot(x, ords)) / twisted)
                report.scaling_checked += 1
            if min(ratios) != delta_at(model, x, data).delta:
                raise InvariantViolation("delta disagrees between the two S routes", witness=x)
    return report
