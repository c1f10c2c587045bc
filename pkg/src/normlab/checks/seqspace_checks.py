"""Checks for finitely supported functions and their summation calculus."""

from __future__ import annotations

import numpy as np

from normlab.checks._util import bool_margin, margin_eq, margin_le, pick, rand_vector
from normlab.duality import dual_extremizer
from normlab.exponents import conjugate_exponent
from normlab.seqspace import (
    SparseFn,
    convergence_check,
    delta,
    fubini_check,
    lp_norm_seq,
    truncate,
    unordered_sum,
)
from normlab.verify import Check

_KEY_POOL = [f"k{i:02d}" for i in range(40)]


def _rand_sparse(rng, size: int, complex_field: bool = False) -> SparseFn:
    keys = list(rng.choice(_KEY_POOL, size=size, replace=False))
    vals = rand_vector(rng, size, complex_field)
    return SparseFn(dict(zip(keys, vals)))


def _sample_pair(rng, ctx):
    size = int(rng.integers(1, 12))
    complex_field = bool(rng.integers(2))
    f = _rand_sparse(rng, size, complex_field)
    g = _rand_sparse(rng, int(rng.integers(1, 12)), complex_field)
    return {
        "f_ser": f.serialize(),
        "g_ser": g.serialize(),
        "p": float(pick(rng, [p for p in ctx.config.p_grid if np.isfinite(p)])),
    }


def _parse(serialized: str) -> SparseFn:
    entries = {}
    for line in serialized.splitlines():
        if not line:
            continue
        key, _, val = line.partition("=")
        if val.endswith("i"):
            body = val[:-1]
            idx = max(body.rfind("+", 1), body.rfind("-", 1))
            while idx > 0 and body[idx - 1] in "eE":
                idx = max(body.rfind("+", 1, idx - 1), body.rfind("-", 1, idx - 1))
            entries[key] = complex(float(body[:idx]), float(body[idx:]))
        else:
            entries[key] = float(val)
    return SparseFn(entries)


def _holder_pairing(payload, ctx):
    f, g = _parse(payload["f_ser"]), _parse(payload["g_ser"])
    p = payload["p"]
    q = conjugate_exponent(p)
    prod = f.pointwise(g)
    lhs = sum(abs(v) for _, v in prod.items())
    rhs = lp_norm_seq(f, p) * lp_norm_seq(g, q)
    return margin_le(lhs, rhs, 1e-12 * max(rhs, 1.0))


def _dual_attainment(payload, ctx):
    g = _parse(payload["g_ser"])
    if len(g) == 0:
        return 0.0
    p = payload["p"]
    if p <= 1.0:
        p = 2.0
    q = conjugate_exponent(p)
    keys = g.support
    extremal = dual_extremizer(g.values_array(), p)
    f = SparseFn(dict(zip(keys, extremal)))
    lhs = abs(unordered_sum(f.pointwise(g)))
    rhs = lp_norm_seq(g, q) * lp_norm_seq(f, p)
    return margin_eq(lhs, rhs, 1e-10 * max(rhs, 1.0))


def _small_p(payload, ctx):
    f, g = _parse(payload["f_ser"]), _parse(payload["g_ser"])
    worst = np.inf
    for p in (0.25, 0.5, 0.75):
        n1 = lp_norm_seq(f, 1.0)
        np_ = lp_norm_seq(f, p)
        worst = min(worst, margin_le(n1, np_, 1e-12 * max(np_, 1.0)))
        lhs = abs(unordered_sum(f.pointwise(g)))
        rhs = lp_norm_seq(g, float("inf")) * np_
        worst = min(worst, margin_le(lhs, rhs, 1e-12 * max(rhs, 1.0)))
    return float(worst)


def _norm_monotone(payload, ctx):
    f = _parse(payload["f_ser"])
    ps = sorted(float(p) for p in ctx.config.p_grid if np.isfinite(p))
    worst = np.inf
    for p, q in zip(ps[:-1], ps[1:]):
        np_, nq = lp_norm_seq(f, p), lp_norm_seq(f, q)
        worst = min(worst, margin_le(nq, np_, 1e-12 * max(np_, 1.0)))
        ninf = lp_norm_seq(f, float("inf"))
        worst = min(worst, margin_le(ninf, np_, 1e-12 * max(np_, 1.0)))
    # delta functions have unit norm for every p
    worst = min(worst, margin_eq(lp_norm_seq(delta("z"), payload["p"]), 1.0, 0.0))
    return float(worst)


def _sample_product(rng, ctx):
    nx, ny = int(rng.integers(1, 6)), int(rng.integers(1, 6))
    complex_field = bool(rng.integers(2))
    vals = rand_vector(rng, nx * ny, complex_field)
    f = SparseFn(
        {(f"x{i}", f"y{j}"): vals[i * ny + j] for i in range(nx) for j in range(ny)}
    )
    return {"entries": [[k[0], k[1], v.real, getattr(v, "imag", 0.0)] for k, v in f.items()]}


def _fubini(payload, ctx):
    f = SparseFn(
        {(x, y): complex(re, im) for x, y, re, im in payload["entries"]}
    )
    rep = fubini_check(f)
    scale = max(abs(rep.double), 1.0)
    return min(
        margin_le(abs(rep.double - rep.iterated_xy), 0.0, 1e-13 * scale),
        margin_le(abs(rep.double - rep.iterated_yx), 0.0, 1e-13 * scale),
    )


def _sample_convergence(rng, ctx):
    size = int(rng.integers(1, 8))
    base = _rand_sparse(rng, size)
    return {"base_ser": base.serialize(), "steps": int(rng.integers(2, 7))}


def _convergence(payload, ctx):
    base = _parse(payload["base_ser"])
    steps = int(payload["steps"])
    nonneg = SparseFn({k: abs(v) for k, v in base.items()})
    family = [(1.0 - 2.0**-j) * nonneg for j in range(1, steps + 1)]
    worsts = []
    rep = convergence_check("monotone", family, nonneg)
    worsts.append(bool_margin(rep.precondition_ok and rep.passed))
    rep = convergence_check("dominated", family, nonneg, dominator=nonneg)
    worsts.append(bool_margin(rep.precondition_ok and rep.passed))
    rep = convergence_check("fatou", family, nonneg)
    worsts.append(bool_margin(rep.precondition_ok and rep.passed))
    # Escaping mass: Fatou strict, dominated precondition fails without
    # a dominator.
    escaping = [delta(f"esc{j}") for j in range(4)]
    rep = convergence_check("fatou", escaping, SparseFn())
    worsts.append(bool_margin(rep.precondition_ok and rep.passed))
    rep = convergence_check("dominated", escaping, SparseFn())
    worsts.append(bool_margin(not rep.precondition_ok))
    return float(min(worsts))


def _truncation(payload, ctx):
    f = _parse(payload["f_ser"])
    eps = payload["eps"]
    chosen, tail = truncate(f, eps)
    total = lp_norm_seq(f, 1.0)
    worsts = [margin_le(tail, eps, 1e-13 * max(eps, 1.0))]
    actual_tail = sum(abs(v) for k, v in f.items() if k not in chosen)
    worsts.append(margin_eq(tail, actual_tail, 1e-13 * max(total, 1.0)))
    if eps >= total:
        worsts.append(bool_margin(len(chosen) == 0))
    if eps == 0.0:
        worsts.append(bool_margin(len(chosen) == len(f)))
    # Greedy minimality: dropping the least element of the chosen set
    # (smallest modulus inside A) must break the epsilon bound.
    if chosen:
        smallest = min(chosen, key=lambda k: (abs(f[k]), str(k)))
        worsts.append(bool_margin(actual_tail + abs(f[smallest]) > eps))
    return float(min(worsts))


def _sample_truncation(rng, ctx):
    size = int(rng.integers(1, 12))
    f = _rand_sparse(rng, size)
    mode = int(rng.integers(3))
    total = lp_norm_seq(f, 1.0)
    if mode == 0:
        eps = 0.0
    elif mode == 1:
        eps = float(total * rng.uniform(1.0, 1.5))
    else:
        eps = float(total * rng.uniform(0.0, 1.0))
    return {"f_ser": f.serialize(), "eps": eps}


def build() -> list[Check]:
    return [
        Check(
            "seqspace.holder_pairing", "seqspace",
            "This is Holder's inequality in the present context",
            _sample_pair, _holder_pairing,
        ),
        Check(
            "seqspace.dual_attainment", "seqspace",
            "||g||_q is the smallest value of C for which",
            _sample_pair, _dual_attainment,
        ),
        Check(
            "seqspace.small_p_bound", "seqspace",
            "||f||_1 <= ||f||_p for 0 < p < 1",
            _sample_pair, _small_p,
        ),
        Check(
            "seqspace.norm_monotonicity", "seqspace",
            "||f||_q <= ||f||_p and ||f||_inf <= ||f||_p",
            _sample_pair, _norm_monotone,
        ),
        Check(
            "seqspace.fubini", "seqspace",
            "then we would like to check that the double sums agree",
            _sample_product, _fubini,
        ),
        Check(
            "seqspace.convergence_modes", "seqspace",
            "monotone convergence; Fatou's lemma; dominated convergence",
            _sample_convergence, _convergence,
        ),
        Check(
            "seqspace.truncation", "seqspace",
            "sum_{x in B} |f(x)| <= epsilon approximation by finite subsets",
            _sample_truncation, _truncation,
        ),
    ]
