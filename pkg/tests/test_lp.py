import itertools
import random
from fractions import Fraction as F

import pytest

from kssdomain import lp
from kssdomain.exact import rank, solve_linear


def brute_force_min(c, a, b):
    """Minimum over all basic feasible points; assumes a bounded feasible region."""
    n = len(c)
    best = None
    for rows in itertools.combinations(range(len(a)), n):
        sub = [a[i] for i in rows]
        if rank(sub) < n:
            continue
        x = solve_linear(sub, [b[i] for i in rows])
        if all(sum(p * q for p, q in zip(r, x)) >= bi for r, bi in zip(a, b)):
            val = sum(p * q for p, q in zip(c, x))
            best = val if best is None else min(best, val)
    return best


def test_simple_box():
    a = [[1, 0], [0, 1], [-1, 0], [0, -1]]
    b = [0, 0, -1, -2]
    res = lp.minimize([1, 1], a, b)
    assert res.status == lp.OPTIMAL and res.value == 0
    assert lp.maximize([1, 1], a, b).value == 3


def test_infeasible():
    assert lp.minimize([1], [[1], [-1]], [1, 0]).status == lp.INFEASIBLE


def test_unbounded():
    assert lp.minimize([1], [[-1]], [-3]).status == lp.UNBOUNDED


def test_degenerate_vertex():
    # many constraints through the origin
    a = [[1, 0], [0, 1], [1, 1], [1, 2], [2, 1], [-1, -1]]
    b = [0, 0, 0, 0, 0, -1]
    assert lp.minimize([1, 3], a, b).value == 0
    assert lp.minimize([-1, -3], a, b).value == -3


@pytest.mark.parametrize("seed", range(25))
def test_random_against_brute_force(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    a = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(rng.randint(n + 1, 7))]
    # a bounding box keeps everything bounded
    for i in range(n):
        e = [0] * n
        e[i] = 1
        a.append(e)
        a.append([-v for v in e])
    b = [F(rng.randint(-3, 1), rng.randint(1, 3)) for _ in range(len(a) - 2 * n)] + [F(-2)] * (2 * n)
    c = [F(rng.randint(-3, 3)) for _ in range(n)]
    res = lp.minimize(c, a, b)
    expected = brute_force_min(c, a, b)
    if expected is None:
        assert res.status == lp.INFEASIBLE
    else:
        assert res.status == lp.OPTIMAL and res.value == expected
