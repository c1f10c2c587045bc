"""Checks for the vector, norm, and convexity layer."""

from __future__ import annotations

import numpy as np

from normlab.checks._util import (
    margin_eq,
    margin_le,
    pick,
    rand_vector,
)
from normlab.core import (
    ConvexSampledFunction,
    difference_quotient_check,
    euclidean_norm_sq,
    inner_product,
    p_norm,
    pairing,
    polarize,
    support_line,
)
from normlab.exponents import as_exponent
from normlab.verify import Check


def _sample_pair(rng, ctx):
    dim = pick(rng, ctx.config.dims)
    complex_field = bool(rng.integers(2))
    return {
        "v": rand_vector(rng, dim, complex_field),
        "w": rand_vector(rng, dim, complex_field),
        "p": float(pick(rng, ctx.config.p_grid)),
    }


def _minkowski(payload, ctx):
    v, w, p = payload["v"], payload["w"], payload["p"]
    scale = p_norm(v, p) + p_norm(w, p)
    return margin_le(p_norm(v + w, p), scale, 1e-10 * max(scale, 1.0))


def _holder(payload, ctx):
    v, w, p = payload["v"], payload["w"], payload["p"]
    q = as_exponent(p).conjugate()
    rhs = p_norm(v, p) * p_norm(w, q)
    return margin_le(abs(pairing(v, w)), rhs, 1e-10 * max(rhs, 1.0))


def _exponent_comparison(payload, ctx):
    v = payload["v"]
    p, q = payload["pq"]
    n = v.shape[0]
    amax = float(np.abs(v).max())
    np_, nq = p_norm(v, p), p_norm(v, q)
    margins = [
        margin_le(amax, np_, 1e-12 * max(np_, 1.0)),
        margin_le(nq, np_, 1e-12 * max(np_, 1.0)),
        margin_le(np_, n ** (1.0 / p) * amax, 1e-12 * max(amax, 1.0)),
        margin_le(np_, n ** (1.0 / p - 1.0 / q) * nq, 1e-12 * max(nq, 1.0)),
    ]
    return min(margins)


def _sample_comparison(rng, ctx):
    dim = pick(rng, ctx.config.dims)
    finite = sorted(float(p) for p in ctx.config.p_grid if np.isfinite(p))
    if len(finite) < 2:
        finite = [1.0, 2.0]
    i = int(rng.integers(len(finite) - 1))
    j = int(rng.integers(i + 1, len(finite)))
    return {
        "v": rand_vector(rng, dim, bool(rng.integers(2))),
        "pq": [finite[i], finite[j]],
    }


def _sample_power(rng, ctx):
    dim = pick(rng, ctx.config.dims)
    return {
        "b": rng.random(dim),
        "c": rng.random(dim),
        "p": float(pick(rng, [0.25, 0.5, 0.75])),
    }


def _power_subadditive(payload, ctx):
    b, c, p = payload["b"], payload["c"], payload["p"]
    lhs = float(np.sum((b + c) ** p))
    rhs = float(np.sum(b**p) + np.sum(c**p))
    return margin_le(lhs, rhs, 1e-12 * max(rhs, 1.0))


def _sample_cs(rng, ctx):
    dim = pick(rng, ctx.config.dims)
    complex_field = bool(rng.integers(2))
    return {
        "v": rand_vector(rng, dim, complex_field),
        "w": rand_vector(rng, dim, complex_field),
        "t": float(rng.uniform(-2.0, 2.0)),
    }


def _cauchy_schwarz(payload, ctx):
    v, w = payload["v"], payload["w"]
    rhs = p_norm(v, 2) * p_norm(w, 2)
    slack = 1e-10 * max(rhs, 1.0)
    general = margin_le(abs(inner_product(v, w)), rhs, slack)
    parallel = payload["t"] * v
    attained = margin_eq(
        abs(inner_product(v, parallel)), p_norm(v, 2) * p_norm(parallel, 2), slack
    )
    return min(general, attained)


def _parallelogram(payload, ctx):
    v, w = payload["v"], payload["w"]
    lhs = p_norm(v + w, 2) ** 2 + p_norm(v - w, 2) ** 2
    rhs = 2.0 * (p_norm(v, 2) ** 2 + p_norm(w, 2) ** 2)
    return margin_eq(lhs, rhs, 1e-12 * max(rhs, 1.0))


def _jensen(payload, ctx):
    x, lam, p = payload["x"], payload["lam"], payload["p"]
    lhs = abs(float(np.sum(lam * x))) ** p
    rhs = float(np.sum(lam * np.abs(x) ** p))
    return margin_le(lhs, rhs, 1e-12 * max(rhs, 1.0))


def _sample_jensen(rng, ctx):
    dim = pick(rng, ctx.config.dims)
    lam = rng.random(dim)
    lam /= lam.sum()
    finite = [float(p) for p in ctx.config.p_grid if np.isfinite(p)]
    return {
        "x": rng.uniform(-2.0, 2.0, dim),
        "lam": lam,
        "p": pick(rng, finite or [2.0]),
    }


def _polarization(payload, ctx):
    v, w = payload["v"], payload["w"]
    field = "complex" if np.iscomplexobj(v) else "real"
    rebuilt = polarize(euclidean_norm_sq, v, w, field)
    direct = inner_product(v, w)
    scale = max(p_norm(v, 2) * p_norm(w, 2), 1.0)
    return margin_le(abs(rebuilt - direct), 0.0, 1e-12 * scale)


def _sample_convex(rng, ctx):
    """Samples of a random convex function c2*(x-a)^2 + c1*|x-b| + affine."""
    n = int(rng.integers(4, 12))
    grid = np.sort(rng.uniform(-2.0, 2.0, n))
    while np.min(np.diff(grid)) < 1e-3:
        grid = np.sort(rng.uniform(-2.0, 2.0, n))
    c2 = rng.uniform(0.0, 2.0)
    c1 = rng.uniform(0.0, 2.0)
    a, b = rng.uniform(-1.0, 1.0, 2)
    s0, s1 = rng.uniform(-1.0, 1.0, 2)
    vals = c2 * (grid - a) ** 2 + c1 * np.abs(grid - b) + s0 * grid + s1
    return {"grid": grid, "values": vals, "t_index": int(rng.integers(n))}


def _convexity(payload, ctx):
    f = ConvexSampledFunction(payload["grid"], payload["values"])
    if not difference_quotient_check(f):
        return -1.0
    slope, intercept = support_line(f, int(payload["t_index"]))
    line = slope * f.grid + intercept
    touch = margin_eq(
        float(line[int(payload["t_index"])]),
        float(f.values[int(payload["t_index"])]),
        1e-10 * max(1.0, float(np.abs(f.values).max())),
    )
    below = float(np.min(f.values - line)) + 1e-12 * max(
        1.0, float(np.abs(f.values).max())
    )
    return min(touch, below)


def build() -> list[Check]:
    return [
        Check(
            "core.minkowski", "core",
            "Minkowski's inequality states that",
            _sample_pair, _minkowski,
        ),
        Check(
            "core.holder", "core",
            "Hoelder's inequality states that",
            _sample_pair, _holder,
        ),
        Check(
            "core.exponent_comparison", "core",
            "(sum a_j^q)^{1/q} le (sum a_j^p)^{1/p}; which is an instance of",
            _sample_comparison, _exponent_comparison,
        ),
        Check(
            "core.power_subadditive", "core",
            "(u + v)^p le u^p + v^p",
            _sample_power, _power_subadditive,
        ),
        Check(
            "core.cauchy_schwarz", "core",
            "The Cauchy-Schwarz inequality says that",
            _sample_cs, _cauchy_schwarz,
        ),
        Check(
            "core.parallelogram", "core",
            "the parallelogram law",
            _sample_pair, _parallelogram,
        ),
        Check(
            "core.jensen", "core",
            "generalized convexity inequality",
            _sample_jensen, _jensen,
        ),
        Check(
            "core.polarization", "core",
            "the polarization identities are",
            _sample_pair, _polarization,
        ),
        Check(
            "core.support_line", "core",
            "there is a real-valued affine function; increasing difference quotients",
            _sample_convex, _convexity,
        ),
    ]
