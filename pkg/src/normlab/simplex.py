"""A small dense two-phase simplex for the polyhedral subproblems.

Solves max c.x subject to A x = b, x >= 0 with Bland's rule (no cycling).
Problem sizes here are tiny (tens of variables, ~10 rows), so a dense
tableau is the simplest robust choice.  This also provides the feasibility
oracles used for cone membership certificates and convex hull membership.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PIVOT_TOL = 1e-11


@dataclass(frozen=True)
class SimplexResult:
    status: str  # "optimal", "infeasible", or "unbounded"
    x: np.ndarray | None
    value: float


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    for i in range(tab.shape[0]):
        if i != row and abs(tab[i, col]) > 0:
            tab[i] -= tab[i, col] * tab[row]
    basis[row] = col


def _run_phase(tab: np.ndarray, basis: list[int], ncols: int) -> str:
    """Iterate Bland pivots on the reduced-cost row until optimal/unbounded."""
    while True:
        enter = -1
        for j in range(ncols):
            if tab[-1, j] > _PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave, best = -1, np.inf
        for i in range(tab.shape[0] - 1):
            if tab[i, enter] > _PIVOT_TOL:
                ratio = tab[i, -1] / tab[i, enter]
                if ratio < best - 1e-12 or (
                    abs(ratio - best) <= 1e-12
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    leave, best = i, ratio
        if leave < 0:
            return "unbounded"
        _pivot(tab, basis, leave, enter)


def simplex_maximize(c, a_eq, b_eq) -> SimplexResult:
    """max c.x s.t. a_eq @ x = b_eq, x >= 0."""
    c = np.asarray(c, dtype=np.float64)
    a = np.asarray(a_eq, dtype=np.float64)
    b = np.asarray(b_eq, dtype=np.float64).copy()
    m, n = a.shape
    if c.shape != (n,) or b.shape != (m,):
        raise ValueError("inconsistent LP dimensions")
    a = a.copy()
    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0

    # Phase 1: artificial variables, minimize their sum.
    tab = np.zeros((m + 1, n + m + 1))
    tab[:m, :n] = a
    tab[:m, n : n + m] = np.eye(m)
    tab[:m, -1] = b
    basis = list(range(n, n + m))
    # Reduced costs for maximizing -(sum of artificials).
    tab[-1, :n] = a.sum(axis=0)
    tab[-1, -1] = b.sum()
    status = _run_phase(tab, basis, n + m)
    if status != "optimal" or tab[-1, -1] > 1e-8 * max(1.0, abs(b).max()):
        return SimplexResult("infeasible", None, np.nan)

    # Drive leftover artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if abs(tab[i, j]) > _PIVOT_TOL:
                    _pivot(tab, basis, i, j)
                    break

    # Phase 2 on the original objective.
    tab2 = np.zeros((m + 1, n + 1))
    tab2[:m, :n] = tab[:m, :n]
    tab2[:m, -1] = tab[:m, -1]
    tab2[-1, :n] = c
    for i in range(m):
        if basis[i] < n and abs(tab2[-1, basis[i]]) > 0:
            tab2[-1] -= tab2[-1, basis[i]] * tab2[i]
    status = _run_phase(tab2, basis, n)
    if status == "unbounded":
        return SimplexResult("unbounded", None, np.inf)
    x = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab2[i, -1]
    return SimplexResult("optimal", x, float(c @ x))


def feasible_nonnegative_solution(a_eq, b_eq) -> np.ndarray | None:
    """Some x >= 0 with a_eq @ x = b_eq, or None if none exists."""
    a = np.asarray(a_eq, dtype=np.float64)
    res = simplex_maximize(np.zeros(a.shape[1]), a, b_eq)
    return None if res.status == "infeasible" else res.x


def min_of_linear_max(a, b) -> tuple[float, np.ndarray | None]:
    """Exact value of min over t of max_i (a[i].t + b[i]).

    Solved through the equivalent bounded program
    max { lambda.b : lambda >= 0, sum lambda = 1, a^T lambda = 0 },
    whose feasible set is a compact polytope; infeasibility means the
    piecewise-linear max is unbounded below (returns -inf).  The second
    return value is the optimal weight vector, or None when unbounded.
    """
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    b = np.asarray(b, dtype=np.float64)
    m, d = a.shape
    eq = np.vstack([a.T, np.ones((1, m))])
    rhs = np.concatenate([np.zeros(d), [1.0]])
    res = simplex_maximize(b, eq, rhs)
    if res.status == "infeasible":
        return -np.inf, None
    return res.value, res.x
