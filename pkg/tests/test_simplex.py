import numpy as np
import pytest

from relief_planner.checker.oracle import vertex_enumeration
from relief_planner.model import EQ, GE, LE, LinearProgram
from relief_planner.solver import (
    INFEASIBLE,
    ITERATION_LIMIT,
    OPTIMAL,
    UNBOUNDED,
    SimplexConfig,
    solve_dense,
    solve_lp,
)
from relief_planner.solver.simplex import _iterate

BOX = 10.0


def _random_lp(rng):
    n = int(rng.integers(1, 5))
    m = int(rng.integers(1, 6))
    cost = rng.integers(-5, 6, size=n).astype(float)
    matrix = rng.integers(-5, 6, size=(m, n)).astype(float)
    for row in matrix:
        while not row.any():
            row[:] = rng.integers(-5, 6, size=n)
    senses = [[LE, GE, EQ][i] for i in rng.choice(3, size=m, p=[0.5, 0.35, 0.15])]
    # The vertex oracle needs independent equalities; keep at most one.
    senses = [sense if sense != EQ or senses.index(EQ) == i else LE for i, sense in enumerate(senses)]
    rhs = rng.integers(-10, 11, size=m).astype(float)
    # Box rows keep the region bounded for the vertex oracle.
    matrix = np.vstack([matrix, np.eye(n)])
    senses = senses + [LE] * n
    rhs = np.concatenate([rhs, np.full(n, BOX)])
    return cost, matrix, senses, rhs


def _feasible(matrix, senses, rhs, values, tol=1e-6):
    activity = matrix @ values
    for value, sense, bound in zip(activity, senses, rhs):
        if sense == LE and value > bound + tol:
            return False
        if sense == GE and value < bound - tol:
            return False
        if sense == EQ and abs(value - bound) > tol:
            return False
    return bool(np.all(values >= -tol))


def test_random_lps_match_vertex_enumeration():
    rng = np.random.default_rng(0)
    for case in range(500):
        cost, matrix, senses, rhs = _random_lp(rng)
        n = cost.size
        outcome = solve_dense(cost, matrix, senses, rhs, np.zeros(n), np.full(n, np.inf))
        expected = vertex_enumeration(cost, matrix, senses, rhs)
        if expected is None:
            assert outcome.status == INFEASIBLE, case
        else:
            assert outcome.status == OPTIMAL, case
            assert outcome.objective == pytest.approx(expected, abs=1e-6, rel=1e-6), case
            assert _feasible(matrix, senses, rhs, outcome.values), case


def test_textbook_maximization():
    # max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
    matrix = np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]])
    outcome = solve_dense(
        np.array([-3.0, -5.0]), matrix, [LE, LE, LE], np.array([4.0, 12.0, 18.0]), np.zeros(2), np.full(2, np.inf)
    )
    assert outcome.ok
    assert outcome.objective == pytest.approx(-36.0)
    assert outcome.values == pytest.approx([2.0, 6.0])
    assert outcome.tight_rows == [False, True, True]


def test_degenerate_cycling_example_terminates():
    # A classic cycling instance for the largest-coefficient rule.
    cost = np.array([-0.75, 20.0, -0.5, 6.0])
    matrix = np.array(
        [
            [0.25, -8.0, -1.0, 9.0],
            [0.5, -12.0, -0.5, 3.0],
            [0.0, 0.0, 1.0, 0.0],
        ]
    )
    outcome = solve_dense(cost, matrix, [LE, LE, LE], np.array([0.0, 0.0, 1.0]), np.zeros(4), np.full(4, np.inf))
    assert outcome.ok
    assert outcome.objective == pytest.approx(-1.25)


def test_ratio_ties_leave_the_lowest_basic_variable():
    # both rows tie at ratio 1; row 1 holds basic column 1, row 0 holds column 2
    tableau = np.array(
        [
            [1.0, 0.0, 1.0, 1.0],
            [1.0, 1.0, 0.0, 1.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]
    )
    basis = [2, 1]
    status, iterations = _iterate(tableau, basis, 3, SimplexConfig(), 10)
    assert (status, iterations) == (OPTIMAL, 1)
    assert basis == [2, 0]
    assert tableau[:-1, -1].tolist() == pytest.approx([0.0, 1.0])


def test_infeasible_and_unbounded():
    infeasible = solve_dense(
        np.array([1.0]), np.array([[1.0], [1.0]]), [GE, LE], np.array([2.0, 1.0]), np.zeros(1), np.full(1, np.inf)
    )
    assert infeasible.status == INFEASIBLE
    unbounded = solve_dense(
        np.array([-1.0, 0.0]), np.array([[1.0, -1.0]]), [LE], np.array([1.0]), np.zeros(2), np.full(2, np.inf)
    )
    assert unbounded.status == UNBOUNDED


def test_equality_rows_and_shifted_bounds():
    lp = LinearProgram()
    x = lp.add_column("x", lower=2.0, upper=8.0)
    y = lp.add_column("y", lower=1.0)
    lp.add_row({x: 1.0, y: 1.0}, EQ, 7.0, family=1)
    lp.set_objective({x: 1.0, y: 3.0}, offset=10.0)
    outcome = solve_lp(lp)
    assert outcome.ok
    assert outcome.values == pytest.approx([6.0, 1.0])
    assert outcome.objective == pytest.approx(6.0 + 3.0 + 10.0)


def test_redundant_equalities_are_dropped():
    matrix = np.array([[1.0, 1.0], [2.0, 2.0]])
    outcome = solve_dense(
        np.array([1.0, 2.0]), matrix, [EQ, EQ], np.array([3.0, 6.0]), np.zeros(2), np.full(2, np.inf)
    )
    assert outcome.ok
    assert outcome.objective == pytest.approx(3.0)


def test_crossed_bounds_are_infeasible():
    outcome = solve_dense(np.array([1.0]), np.zeros((0, 1)), [], np.zeros(0), np.array([2.0]), np.array([1.0]))
    assert outcome.status == INFEASIBLE


def test_iteration_limit():
    matrix = np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]])
    outcome = solve_dense(
        np.array([-3.0, -5.0]),
        matrix,
        [LE, LE, LE],
        np.array([4.0, 12.0, 18.0]),
        np.zeros(2),
        np.full(2, np.inf),
        config=SimplexConfig(iteration_limit=0),
    )
    assert outcome.status == ITERATION_LIMIT
