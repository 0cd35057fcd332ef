"""Bounded-variable simplex: examples, randomized agreement with scipy."""
from __future__ import annotations

import math
import random

import numpy as np
import pytest
from scipy.optimize import linprog

from minpath import SimplexProblem, simplex_solve


def test_no_constraints_sits_at_lower_bound():
    problem = SimplexProblem.box(np.zeros((0, 3)), [], [1.0, 1.0, 1.0])
    res = simplex_solve(problem)
    assert res.status == "optimal"
    assert res.value == 0.0 and (res.x == 0).all()


def test_single_cover_constraint():
    problem = SimplexProblem.box([[1.0, 1.0]], [1.0], [1.0, 1.0])
    res = simplex_solve(problem)
    assert res.status == "optimal"
    assert math.isclose(res.value, 1.0, abs_tol=1e-9)


def test_prize_style_tradeoff():
    # min x0 + 0.4*y0  s.t.  x0 + y0 >= 1: forfeiting (y0=1) is cheapest
    problem = SimplexProblem.box([[1.0, 1.0]], [1.0], [1.0, 0.4])
    res = simplex_solve(problem)
    assert math.isclose(res.value, 0.4, abs_tol=1e-9)
    assert math.isclose(res.x[1], 1.0, abs_tol=1e-9)


def test_infeasible_detected():
    # x0 >= 2 is impossible inside the unit box
    problem = SimplexProblem.box([[1.0]], [2.0], [1.0])
    assert simplex_solve(problem).status == "infeasible"


def test_fractional_triangle():
    rows = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    res = simplex_solve(SimplexProblem.box(rows, [1, 1, 1], [1, 1, 1]))
    assert math.isclose(res.value, 1.5, abs_tol=1e-9)
    assert np.allclose(res.x, 0.5, atol=1e-9)


@pytest.mark.parametrize("seed", range(40))
def test_matches_scipy_on_random_cover_lps(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    m = rng.randint(1, 14)
    rows = np.zeros((m, n))
    for i in range(m):
        support = rng.sample(range(n), rng.randint(1, n))
        for j in support:
            rows[i, j] = 1.0
    cost = np.array([round(rng.uniform(0.1, 2.0), 3) for _ in range(n)])
    problem = SimplexProblem.box(rows, np.ones(m), cost)
    res = simplex_solve(problem)
    ref = linprog(cost, A_ub=-rows, b_ub=-np.ones(m), bounds=[(0, 1)] * n, method="highs")
    assert res.status == "optimal" and ref.status == 0
    assert math.isclose(res.value, ref.fun, abs_tol=1e-7)
    assert (rows @ res.x >= 1.0 - 1e-9).all()
    assert (res.x >= -1e-12).all() and (res.x <= 1 + 1e-12).all()


@pytest.mark.parametrize("seed", range(25))
def test_matches_scipy_on_general_boxed_lps(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(2, 8)
    m = rng.randint(1, 10)
    rows = np.array([[round(rng.uniform(-1, 2), 2) for _ in range(n)] for _ in range(m)])
    rhs = np.array([round(rng.uniform(-1, 1.5), 2) for _ in range(m)])
    cost = np.array([round(rng.uniform(-1, 2), 2) for _ in range(n)])
    problem = SimplexProblem.box(rows, rhs, cost)
    res = simplex_solve(problem)
    ref = linprog(cost, A_ub=-rows, b_ub=-rhs, bounds=[(0, 1)] * n, method="highs")
    if ref.status == 2:
        assert res.status == "infeasible"
    else:
        assert ref.status == 0
        assert res.status == "optimal"
        assert math.isclose(res.value, ref.fun, abs_tol=1e-6)
