"""Brute-force check of a computed domain against pointwise classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .domains import SEMISTABLE, STATUSES, Model, kss_domain, status_at, valuation_data
from .errors import DomainError
from .exact import format_rat


def simplex_grid(k: int, n: int) -> Iterator[tuple[Fraction, ...]]:
    """All points ``(i_1/n, ..., i_k/n)`` with nonnegative ``i`` summing to at most ``n``."""

    def rec(prefix, budget):
        if len(prefix) == k:
            yield tuple(Fraction(i, n) for i in prefix)
            return
        for i in range(budget + 1):
            yield from rec(prefix + (i,), budget - i)

    yield from rec((), n)


@dataclass
class OracleReport:
    model: str
    n: int
    points: int = 0
    counts: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "grid": self.n,
            "points": self.points,
            "counts": dict(sorted(self.counts.items())),
            "mismatches": [
                {"x": [format_rat(c) for c in x], "status": st, "in_domain": inside} for x, st, inside in self.mismatches
            ],
        }


def grid_oracle(model: Model, n: int) -> OracleReport:
    """Classify every grid point with ``delta_at`` and compare with membership.

    Points on facets count as inside the (closed) domain.
    """
    if n < 2:
        raise DomainError("grid resolution must be at least 2")
    domain = kss_domain(model).domain
    data = valuation_data(model)
    counts = Counter({s: 0 for s in STATUSES})
    report = OracleReport(model.name, n)
    for x in simplex_grid(model.k, n):
        st = status_at(model, x, data)
        counts[st] += 1
        inside = domain.contains(x)
        if (st in SEMISTABLE) != inside:
            report.mismatches.append((x, st, inside))
        report.points += 1
    report.counts = dict(counts)
    return report
