"""Checks for the log-convexity harness."""

from __future__ import annotations

import numpy as np

from normlab.checks._util import bool_margin, margin_eq, margin_le, pick, rand_matrix, rand_vector
from normlab.core import p_norm
from normlab.exponents import as_exponent
from normlab.interpolation import (
    InterpolationTriple,
    log_convexity_check,
    m_p,
    stationarity_residual,
)
from normlab.operators import op_norm_exact
from normlab.verify import Check

_ENDPOINTS = [(1.0, 2.0), (1.0, float("inf")), (2.0, float("inf"))]


def _sample_small(rng, ctx):
    n = int(min(pick(rng, ctx.config.dims), 16))
    complex_field = bool(rng.integers(2))
    diagonal = rng.random() < 0.1
    if diagonal:
        t = np.zeros((n, n), dtype=complex if complex_field else float)
        np.fill_diagonal(t, rand_vector(rng, n, complex_field))
    else:
        t = rand_matrix(rng, n, n, complex_field)
    p_lo, p_hi = _ENDPOINTS[int(rng.integers(len(_ENDPOINTS)))]
    return {
        "t": t,
        "p_lo": p_lo,
        "p_hi": p_hi,
        "t_param": float(rng.uniform(0.1, 0.9)),
        "diagonal": bool(diagonal),
        "seed": int(rng.integers(2**31)),
    }


def _endpoint_consistency(payload, ctx):
    t = payload["t"]
    worst = np.inf
    for p in (1.0, 2.0, float("inf")):
        value, exact = m_p(t, p, budget=1, seed=payload["seed"])
        direct = op_norm_exact(t, p)
        worst = min(
            worst,
            margin_eq(value, direct, 1e-12 * max(direct, 1.0)),
            bool_margin(exact),
        )
    return worst


def _monotone_restarts(payload, ctx):
    t = payload["t"]
    r = InterpolationTriple(payload["p_lo"], payload["p_hi"], payload["t_param"]).r
    if r.value in (1.0, 2.0) or r.is_inf:
        return 0.0
    values = [
        m_p(t, r, budget=b, seed=payload["seed"])[0] for b in (1, 2, 4)
    ]
    ok = all(a <= b + 1e-12 for a, b in zip(values[:-1], values[1:]))
    return bool_margin(ok)


def _log_convexity(payload, ctx):
    t = payload["t"]
    triple = InterpolationTriple(payload["p_lo"], payload["p_hi"], payload["t_param"])
    reports = log_convexity_check(t, [triple], budget=3, seed=payload["seed"])
    margin = reports[0].margin
    if payload["diagonal"]:
        equality = margin_eq(
            reports[0].value_r, reports[0].bound,
            1e-12 * max(reports[0].bound, 1.0),
        )
        return min(margin, equality)
    return margin


def _transpose_symmetry(payload, ctx):
    t = payload["t"]
    m1 = margin_eq(op_norm_exact(t, 1), op_norm_exact(t.T, float("inf")), 0.0)
    m2 = margin_eq(op_norm_exact(t, float("inf")), op_norm_exact(t.T, 1), 0.0)
    return min(m1, m2)


def _sample_stationarity(rng, ctx):
    n = int(min(pick(rng, ctx.config.dims), 16))
    r = float(pick(rng, [1.5, 2.0, 3.0]))
    extremal = rng.random() < 0.3
    if extremal:
        d = np.sort(np.abs(rand_vector(rng, n)))[::-1] + 0.5
        t = np.diag(d)
    else:
        t = rand_matrix(rng, n, n, bool(rng.integers(2)))
    x = rand_vector(rng, n, np.iscomplexobj(t))
    y = rand_vector(rng, n, np.iscomplexobj(t))
    return {"t": t, "x": x, "y": y, "r": r, "extremal": bool(extremal)}


def _stationarity(payload, ctx):
    t, r = payload["t"], payload["r"]
    r_exp = as_exponent(r)
    if payload["extremal"]:
        n = t.shape[0]
        x = np.zeros(n)
        y = np.zeros(n)
        x[0] = 1.0
        y[0] = 1.0
        rep = stationarity_residual(t, x, y, r)
        top = float(np.abs(np.diag(t)).max())
        return min(
            margin_le(rep.mu_residual, 1e-12),
            margin_le(rep.nu_residual, 1e-12),
            margin_eq(rep.mu, top, 1e-12 * top),
            margin_eq(rep.nu, top, 1e-12 * top),
        )
    x = payload["x"]
    y = payload["y"]
    nx = p_norm(x, r_exp)
    ny = p_norm(y, r_exp.conjugate())
    if nx == 0.0 or ny == 0.0:
        return 0.0
    rep = stationarity_residual(t, x / nx, y / ny, r)
    finite = np.isfinite([rep.mu, rep.nu, rep.mu_residual, rep.nu_residual]).all()
    return bool_margin(bool(finite) and rep.mu_residual >= 0 and rep.nu_residual >= 0)


def build() -> list[Check]:
    return [
        Check(
            "interpolation.endpoint_consistency", "interpolation",
            "equal to the operator norm of the linear transformation",
            _sample_small, _endpoint_consistency,
        ),
        Check(
            "interpolation.monotone_restarts", "interpolation",
            "We can also describe M_p as",
            _sample_small, _monotone_restarts,
        ),
        Check(
            "interpolation.log_convexity", "interpolation",
            "As a function of 1/p in [0,1], log M_p is convex.",
            _sample_small, _log_convexity,
        ),
        Check(
            "interpolation.transpose_symmetry", "interpolation",
            "the operator norm of the dual linear transformation",
            _sample_small, _transpose_symmetry,
        ),
        Check(
            "interpolation.stationarity", "interpolation",
            "there is a mu >= 0 such that",
            _sample_stationarity, _stationarity,
        ),
    ]
