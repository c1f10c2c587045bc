"""Log-convexity of operator p-norms: bilinear-form norms, extremal
stationarity residuals, and the interpolation inequality harness.

M_p denotes the p -> p operator norm of a matrix, equivalently the supremum
of |sum_j sum_k y_j a_jk x_k| over unit balls ||x||_p <= 1, ||y||_{p'} <= 1.
Exact values exist for p in {1, 2, inf}; elsewhere only certified lower
bounds are reported, which keeps the convexity test one-sided but sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from normlab.core import p_norm
from normlab.exponents import Exponent, as_exponent
from normlab.operators import as_matrix, op_norm_exact, op_norm_lower

_EXACT_PS = (1.0, 2.0, float("inf"))


@dataclass(frozen=True)
class InterpolationTriple:
    """Endpoints p < q, parameter t in (0,1), and the interpolated r.

    r is derived from 1/r = t/p + (1-t)/q; its conjugate satisfies the same
    relation with the conjugate endpoints.
    """

    p: Exponent
    q: Exponent
    t: float
    r: Exponent = field(init=False)

    def __post_init__(self):
        p = as_exponent(self.p)
        q = as_exponent(self.q)
        t = float(self.t)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "t", t)
        if not 0.0 < t < 1.0:
            raise ValueError("t must lie strictly between 0 and 1")
        if not p.value < q.value:
            raise ValueError("need p < q")
        inv_r = t * p.reciprocal + (1.0 - t) * q.reciprocal
        r = Exponent(float("inf")) if inv_r == 0.0 else Exponent(1.0 / inv_r)
        object.__setattr__(self, "r", r)


def m_p(t_mat, p, budget: int = 8, seed: int = 0) -> tuple[float, bool]:
    """(value, exact) for the p -> p norm.

    Exact for p in {1, 2, inf}; otherwise a certified lower bound from
    ``budget`` seeded restarts of the stationarity iteration, nondecreasing
    in ``budget`` for a fixed seed.
    """
    t_mat = as_matrix(t_mat)
    p = as_exponent(p)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if p.value in _EXACT_PS:
        return op_norm_exact(t_mat, p), True
    best = 0.0
    for restart in range(budget):
        sub_seed = (seed * 1_000_003 + restart) % 2**32
        bound, _ = op_norm_lower(t_mat, p, iters=500, seed=sub_seed)
        best = max(best, bound)
    return best, False


class TripleReport(NamedTuple):
    triple: InterpolationTriple
    value_r: float
    exact_r: bool
    value_p: float
    value_q: float
    bound: float
    margin: float
    passed: bool


def interpolate_bound(n_p: float, n_q: float, triple: InterpolationTriple) -> float:
    """The interpolated bound N_p^t * N_q^(1-t)."""
    if n_p < 0 or n_q < 0:
        raise ValueError("endpoint norms must be nonnegative")
    return float(n_p**triple.t * n_q ** (1.0 - triple.t))


def log_convexity_check(
    t_mat, triples, budget: int = 8, seed: int = 0, slack: float = 1e-9
) -> list[TripleReport]:
    """One-sided test of log-convexity of M_p in 1/p.

    For each triple, the (lower-bounded) value at r must not exceed
    M_p^t * M_q^(1-t) * (1 + slack).  Endpoints in {1, 2, inf} make the
    comparison a genuine test; violations appear as failed report entries.
    """
    t_mat = as_matrix(t_mat)
    reports = []
    for idx, triple in enumerate(triples):
        sub = (seed * 9_176_867 + idx) % 2**32
        vr, exact_r = m_p(t_mat, triple.r, budget=budget, seed=sub)
        vp, _ = m_p(t_mat, triple.p, budget=budget, seed=sub + 1)
        vq, _ = m_p(t_mat, triple.q, budget=budget, seed=sub + 2)
        bound = interpolate_bound(vp, vq, triple)
        margin = bound * (1.0 + slack) - vr
        reports.append(
            TripleReport(triple, vr, exact_r, vp, vq, bound, margin, margin >= 0.0)
        )
    return reports


class StationarityReport(NamedTuple):
    mu: float
    nu: float
    mu_residual: float
    nu_residual: float


def stationarity_residual(t_mat, x, y, r) -> StationarityReport:
    """Residuals of the extremal stationarity equations at (x, y).

    Fits mu in |(T x)_j| = mu |y_j|^(r'-1) and nu in |(y^T T)_k| =
    nu |x_k|^(r-1) by least squares and reports the maximal relative
    residual of each system.  Both vanish (with mu = nu = M_r) exactly at
    an extremal pair.  Inputs must be normalized: ||x||_r = ||y||_{r'} = 1.
    """
    t_mat = as_matrix(t_mat)
    r = as_exponent(r)
    if r.is_inf or r.value == 1.0:
        raise ValueError("stationarity requires 1 < r < inf")
    r_conj = r.conjugate()
    x = np.asarray(x)
    y = np.asarray(y)
    if abs(p_norm(x, r) - 1.0) > 1e-10 or abs(p_norm(y, r_conj) - 1.0) > 1e-10:
        raise ValueError("x and y must be normalized in the r and r' norms")

    def fit(u: np.ndarray, profile: np.ndarray) -> tuple[float, float]:
        denom = float(profile @ profile)
        coef = float(u @ profile) / denom if denom > 0 else 0.0
        scale = max(float(u.max()), np.finfo(float).tiny)
        res = float(np.abs(u - coef * profile).max()) / scale
        return coef, res

    u_rows = np.abs(t_mat @ x)
    prof_rows = np.abs(y) ** (r_conj.value - 1.0)
    mu, mu_res = fit(u_rows, prof_rows)

    u_cols = np.abs(t_mat.T @ y)
    prof_cols = np.abs(x) ** (r.value - 1.0)
    nu, nu_res = fit(u_cols, prof_cols)
    return StationarityReport(mu, nu, mu_res, nu_res)
