"""Exact two-phase simplex method over the rationals.

Solves ``min <c, x>`` subject to ``A x >= b`` with ``x`` free.  Bland's
rule is used throughout, so the method terminates on degenerate problems
(which are the norm here: polytopes in this package are full of vertices
lying on many facets).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None


def _pivot(t: list[list[Fraction]], r: int, c: int) -> None:
    p = t[r][c]
    if p != 1:
        t[r] = [v / p for v in t[r]]
    row = t[r]
    for i in range(len(t)):
        if i != r:
            f = t[i][c]
            if f:
                t[i] = [a - f * b for a, b in zip(t[i], row)]


def _run(t, basis, cost_row, allowed):
    """Iterate on tableau ``t`` (last column rhs) with objective row index
    ``cost_row`` holding reduced costs.  Returns False when unbounded."""
    m = len(basis)
    while True:
        obj = t[cost_row]
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = t[i][enter]
            if a > 0:
                ratio = t[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(t, leave, enter)
        basis[leave] = enter


def minimize(c: Sequence, a: Sequence[Sequence], b: Sequence) -> LPResult:
    c = [Fraction(v) for v in c]
    n = len(c)
    m = len(a)
    if m == 0:
        if any(c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)))
    # columns: x+ (n), x- (n), surplus (m), artificial (m), rhs
    nv = 2 * n + m
    width = nv + m + 1
    t: list[list[Fraction]] = []
    for i, (row, bi) in enumerate(zip(a, b)):
        row = [Fraction(v) for v in row]
        bi = Fraction(bi)
        sign = -1 if bi < 0 else 1
        line = [Fraction(0)] * width
        for j in range(n):
            line[j] = sign * row[j]
            line[n + j] = -sign * row[j]
        line[2 * n + i] = Fraction(-sign)
        line[nv + i] = Fraction(1)
        line[-1] = sign * bi
        t.append(line)
    basis = [nv + i for i in range(m)]

    # phase 1: minimize the sum of artificials
    phase1 = [Fraction(0)] * width
    for i in range(m):
        phase1 = [p - v for p, v in zip(phase1, t[i])]
    for i in range(m):
        phase1[nv + i] = Fraction(0)
    t.append(phase1)
    _run(t, basis, m, range(nv))
    if t[m][-1] != 0:
        return LPResult(INFEASIBLE)
    t.pop()

    # drive zero-level artificials out of the basis
    for i in range(m):
        if basis[i] >= nv:
            col = next((j for j in range(nv) if t[i][j] != 0), None)
            if col is not None:
                _pivot(t, i, col)
                basis[i] = col
    # phase 2
    full_c = c + [-v for v in c] + [Fraction(0)] * m
    obj = [Fraction(0)] * width
    for j in range(nv):
        obj[j] = full_c[j]
    for i in range(m):
        if basis[i] < nv and full_c[basis[i]]:
            f = full_c[basis[i]]
            obj = [o - f * v for o, v in zip(obj, t[i])]
    t.append(obj)
    allowed = [j for j in range(nv)]
    if not _run(t, basis, m, allowed):
        return LPResult(UNBOUNDED)
    values = [Fraction(0)] * (nv + m)
    for i in range(m):
        values[basis[i]] = t[i][-1]
    x = tuple(values[j] - values[n + j] for j in range(n))
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, value, x)


def maximize(c: Sequence, a: Sequence[Sequence], b: Sequence) -> LPResult:
    res = minimize([-Fraction(v) for v in c], a, b)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.value, res.x)


def feasible(a: Sequence[Sequence], b: Sequence, n: int) -> bool:
    return minimize([0] * n, a, b).status != INFEASIBLE
