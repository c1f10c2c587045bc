"""Checks for dual norms, extremizers, Hahn-Banach, gauges, and cones."""

from __future__ import annotations

import itertools

import numpy as np

from normlab.checks._util import bool_margin, margin_eq, margin_le, pick, rand_vector
from normlab.core import p_norm, pairing
from normlab.duality import (
    MaxLinearGauge,
    PolyhedralCone,
    cone_contains,
    dual_cone,
    dual_extremizer,
    dual_norm,
    gauge_value,
    hahn_banach_extend,
    hahn_banach_euclidean,
    in_dual_cone,
    l1_ball_gauge,
    linf_ball_gauge,
    second_dual_contains,
    seminorm_from_sublinear,
)
from normlab.exponents import as_exponent
from normlab.verify import Check


def _sample_extremizer(rng, ctx):
    dim = pick(rng, ctx.config.dims)
    complex_field = bool(rng.integers(2))
    w = rand_vector(rng, dim, complex_field)
    while not np.abs(w).max() > 0:
        w = rand_vector(rng, dim, complex_field)
    return {"w": w, "p": float(pick(rng, ctx.config.p_grid))}


def _extremizer_tightness(payload, ctx):
    w, p = payload["w"], payload["p"]
    v = dual_extremizer(w, p)
    q = as_exponent(p).conjugate()
    lhs = abs(pairing(v, w))
    rhs = p_norm(w, q) * p_norm(v, p)
    return margin_eq(lhs, rhs, 1e-10 * max(rhs, 1.0))


def _sample_second_dual(rng, ctx):
    dim = int(min(pick(rng, ctx.config.dims), 16))
    complex_field = bool(rng.integers(2))
    v = rand_vector(rng, dim, complex_field)
    while not np.abs(v).max() > 0:
        v = rand_vector(rng, dim, complex_field)
    candidates = [rand_vector(rng, dim, complex_field) for _ in range(32)]
    return {
        "v": v,
        "p": float(pick(rng, ctx.config.p_grid)),
        "candidates": np.array(candidates),
    }


def _second_dual(payload, ctx):
    v, p = payload["v"], payload["p"]
    p_exp = as_exponent(p)
    q = p_exp.conjugate()
    target = p_norm(v, p_exp)
    # The extremal functional coefficients: swap the exponent roles so that
    # the pairing attains ||v||_p against a unit dual-norm functional.
    extremal = dual_extremizer(v, q)
    best = 0.0
    for coeffs in list(payload["candidates"]) + [extremal]:
        nq = p_norm(coeffs, q)
        if nq == 0.0:
            continue
        best = max(best, abs(pairing(v, coeffs)) / nq)
    upper = margin_le(best, target, 1e-10 * max(target, 1.0))
    attain = margin_le(target, best, 1e-8 * max(target, 1.0))
    return min(upper, attain)


def _sample_hahn_banach(rng, ctx):
    dim = int(rng.integers(2, 7))
    sub = int(rng.integers(1, dim))
    basis = rand_vector(rng, dim * sub).reshape(sub, dim)
    while np.linalg.matrix_rank(basis) < sub:
        basis = rand_vector(rng, dim * sub).reshape(sub, dim)
    m_rows = int(rng.integers(dim + 1, 2 * dim + 3))
    rows = rand_vector(rng, m_rows * dim).reshape(m_rows, dim)
    absolute = bool(rng.integers(2))
    gauge = MaxLinearGauge(rows, absolute=absolute)
    # A functional dominated by construction: a random convex combination
    # of the gauge rows, restricted to the subspace.
    eff = gauge.effective_rows()
    weights = rng.random(eff.shape[0])
    weights /= weights.sum()
    lam0 = eff.T @ weights
    mu = basis @ lam0
    return {"basis": basis, "mu": mu, "rows": rows, "absolute": absolute}


def _hahn_banach(payload, ctx):
    gauge = MaxLinearGauge(payload["rows"], absolute=bool(payload["absolute"]))
    ext = hahn_banach_extend(payload["basis"], payload["mu"], gauge)
    scale = max(float(np.abs(payload["mu"]).max()), 1.0)
    agree = margin_le(ext.agreement_residual, 1e-10 * scale)
    return min(agree, bool_margin(ext.domination_certified))


def _sample_euclidean_shortcut(rng, ctx):
    dim = int(rng.integers(2, 7))
    sub = int(rng.integers(1, dim))
    complex_field = bool(rng.integers(2))
    basis = np.array([rand_vector(rng, dim, complex_field) for _ in range(sub)])
    while np.linalg.matrix_rank(basis) < sub:
        basis = np.array([rand_vector(rng, dim, complex_field) for _ in range(sub)])
    mu = rand_vector(rng, sub, complex_field)
    return {"basis": basis, "mu": mu}


def _euclidean_shortcut(payload, ctx):
    basis, mu = payload["basis"], payload["mu"]
    lam = hahn_banach_euclidean(list(basis), mu)
    agree = max(abs(lam(basis[i]) - mu[i]) for i in range(basis.shape[0]))
    scale = max(float(np.abs(mu).max()), 1.0)
    # Dual-norm preservation: the extension's 2-dual norm ||a||_2 must equal
    # the norm of its restriction to the span, sup |pairing(w, a)| over unit
    # w in W, which is ||Q^T a||_2 for any orthonormal column basis Q of W.
    q, _ = np.linalg.qr(basis.T.astype(np.result_type(basis.dtype, np.float64)))
    a = lam.coeffs
    restricted = float(np.linalg.norm(q.T @ a))
    preserve = margin_eq(
        dual_norm(lam, 2.0), restricted, 1e-8 * max(restricted, 1.0)
    )
    return min(margin_le(agree, 1e-10 * scale), preserve)


def _sample_gauge_norm(rng, ctx):
    dim = int(rng.integers(1, 7))
    v = rand_vector(rng, dim)
    return {"v": v, "use_linf": bool(rng.integers(2))}


def _gauge_recovers_norm(payload, ctx):
    v = payload["v"]
    dim = v.shape[0]
    tol = 1e-9 * (1.0 + float(np.abs(v).max()))
    if payload["use_linf"]:
        gauge, p = linf_ball_gauge(dim), float("inf")
    else:
        gauge, p = l1_ball_gauge(dim), 1.0
    val = gauge_value(gauge, v, tol)
    return margin_eq(val, p_norm(v, p), 2.0 * tol)


def _sample_seminorm(rng, ctx):
    dim = int(rng.integers(1, 7))
    m_rows = int(rng.integers(1, 2 * dim + 2))
    return {
        "rows": rand_vector(rng, m_rows * dim).reshape(m_rows, dim),
        "v": rand_vector(rng, dim),
    }


def _seminorm_symmetry(payload, ctx):
    sub = MaxLinearGauge(payload["rows"], absolute=False)
    semi = seminorm_from_sublinear(sub)
    v = payload["v"]
    symmetric = margin_eq(semi(v), semi(-v), 1e-13 * max(abs(semi(v)), 1.0))
    pointwise = margin_eq(
        semi(v), max(sub(v), sub(-v)), 1e-13 * max(abs(semi(v)), 1.0)
    )
    return min(symmetric, pointwise)


def _orthant_self_dual(payload, ctx):
    dim = int(payload["dim"])
    orthant = PolyhedralCone(np.eye(dim))
    constraints = dual_cone(orthant)
    worst = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=dim):
        v = np.array(signs) * payload["magnitudes"][:dim]
        member = cone_contains(orthant, v)
        dual_ok = in_dual_cone(constraints, v)
        direct = bool(np.all(v >= -1e-12))
        if member != direct or dual_ok != direct:
            worst = -1.0
    return worst


def _sample_double_dual(rng, ctx):
    dim = int(rng.integers(2, 5))
    n_gen = int(rng.integers(1, 6))
    return {
        "generators": rand_vector(rng, n_gen * dim).reshape(n_gen, dim),
        "v": rand_vector(rng, dim) * 2.0,
    }


def _double_dual(payload, ctx):
    cone = PolyhedralCone(payload["generators"])
    v = payload["v"]
    direct = cone_contains(cone, v, tol=1e-9)
    via_dual = second_dual_contains(cone, v, tol=1e-9)
    if direct == via_dual:
        return 0.0
    # Boundary points can legitimately flip under either tolerance; retry
    # with a margin test before declaring failure.
    dist = _distance_to_cone(cone, v)
    return bool_margin(dist < 1e-6 * max(1.0, float(np.abs(v).max())))


def _distance_to_cone(cone: PolyhedralCone, v: np.ndarray) -> float:
    g = cone.generators
    best = np.inf
    for size in range(0, g.shape[0] + 1):
        for subset in itertools.combinations(range(g.shape[0]), size):
            if not subset:
                best = min(best, float(np.linalg.norm(v)))
                continue
            cols = g[list(subset)].T
            t, *_ = np.linalg.lstsq(cols, v, rcond=None)
            if np.all(t >= -1e-12):
                best = min(best, float(np.linalg.norm(cols @ t - v)))
    return best


def build() -> list[Check]:
    return [
        Check(
            "duality.extremizer_tightness", "duality",
            "|lambda_w(v)| = ||w||_q ||v||_p",
            _sample_extremizer, _extremizer_tightness,
        ),
        Check(
            "duality.second_dual", "duality",
            "||v||** = ||v|| for every v in V",
            _sample_second_dual, _second_dual,
        ),
        Check(
            "duality.hahn_banach_contract", "duality",
            "which is equal to mu on W and satisfies",
            _sample_hahn_banach, _hahn_banach,
        ),
        Check(
            "duality.euclidean_shortcut", "duality",
            "every linear functional lambda on V can be represented",
            _sample_euclidean_shortcut, _euclidean_shortcut,
        ),
        Check(
            "duality.gauge_recovers_norms", "duality",
            "the Minkowski functional on V associated to A is defined by",
            _sample_gauge_norm, _gauge_recovers_norm,
        ),
        Check(
            "duality.seminorm_symmetry", "duality",
            "N(v) = max(p(v), p(-v)) is a seminorm on V",
            _sample_seminorm, _seminorm_symmetry,
        ),
        Check(
            "duality.orthant_self_dual", "duality",
            "one can check that E' = E",
            lambda rng, ctx: {
                "dim": int(rng.integers(1, 5)),
                "magnitudes": rng.uniform(0.1, 2.0, 4),
            },
            _orthant_self_dual,
            trials=40,
        ),
        Check(
            "duality.double_dual", "duality",
            "then E = E''",
            _sample_double_dual, _double_dual,
        ),
    ]
