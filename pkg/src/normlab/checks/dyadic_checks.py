"""Checks for dyadic analysis: expectations, maximal/square functions with
their explicit constants, Haar/Rademacher/Walsh systems, stopping times,
and the golden empirical-ratio suites."""

from __future__ import annotations

import itertools

import numpy as np

from normlab.checks._util import bool_margin, margin_eq, margin_le, pick, rand_step
from normlab.dyadic import (
    DyadicInterval,
    DyadicStepFunction,
    distribution_measure,
    expectation,
    expectation_ladder,
    haar_function,
    haar_reconstruct,
    haar_transform,
    khintchine_report,
    layer_cake,
    maximal_function,
    maximal_linearization,
    rademacher,
    square_function,
    stopping_decompose,
    superlevel_cells,
    tail_square_report,
    walsh,
)
from normlab.verify import Check, trial_rng

_GOLDEN_LEVELS = range(1, 11)
_GOLDEN_TRIALS = 400


def _levels(ctx):
    return [l for l in ctx.config.levels if l >= 1] or [4]


def _sample_f(rng, ctx):
    return {"f": rand_step(rng, _levels(ctx), bool(rng.integers(2)))}


def _sample_fg(rng, ctx):
    complex_field = bool(rng.integers(2))
    return {
        "f": rand_step(rng, _levels(ctx), complex_field),
        "g": rand_step(rng, _levels(ctx), complex_field),
        "j": int(rng.integers(0, max(_levels(ctx)) + 1)),
        "k": int(rng.integers(0, max(_levels(ctx)) + 1)),
    }


def _plain_product_integral(f: DyadicStepFunction, g: DyadicStepFunction):
    return (f * g).integral()


def _expectation_self_adjoint(payload, ctx):
    f, g, j = payload["f"], payload["g"], payload["j"]
    a = _plain_product_integral(expectation(f, j), g)
    b = _plain_product_integral(f, expectation(g, j))
    c = _plain_product_integral(expectation(f, j), expectation(g, j))
    scale = max(abs(a), abs(b), abs(c), 1.0)
    return min(
        margin_le(abs(a - b), 0.0, 1e-13 * scale),
        margin_le(abs(a - c), 0.0, 1e-13 * scale),
    )


def _martingale_orthogonality(payload, ctx):
    f, g = payload["f"], payload["g"]
    j = max(1, payload["j"])
    k = max(1, payload["k"])
    if j == k:
        k = j + 1
    df = expectation(f, j) - expectation(f, j - 1)
    dg = expectation(g, k) - expectation(g, k - 1)
    scale = max(float(np.abs(f.values).max() * np.abs(g.values).max()), 1.0)
    m1 = margin_le(abs(_plain_product_integral(df, dg)), 0.0, 1e-13 * scale)
    base = expectation(f, 0)
    m2 = margin_le(abs(_plain_product_integral(base, dg)), 0.0, 1e-13 * scale)
    return min(m1, m2)


def _expectation_idempotent(payload, ctx):
    f = payload["f"]
    j, k = sorted((payload["j"], payload["k"]))
    ej = expectation(expectation(f, j), k)  # coarser after finer
    direct = expectation(f, j)
    scale = max(float(np.abs(f.values).max()), 1.0)
    m1 = margin_le(
        float(np.abs(expectation(expectation(f, k), j).values - direct.values).max()),
        0.0, 1e-13 * scale,
    )
    m2 = margin_le(
        float(np.abs(ej.values - direct.values).max()), 0.0, 1e-13 * scale
    )
    # E_k(g f) = g E_k(f) for g constant on level-k cells
    g = expectation(payload["g"], j).refine(f.level) if payload["g"].level <= f.level \
        else expectation(payload["g"], j)
    lvl = max(f.level, g.level)
    lhs = expectation(g * f, j)
    rhs = g * expectation(f, j)
    m3 = margin_le(
        float(np.abs(lhs.refine(lvl).values - rhs.refine(lvl).values).max()),
        0.0, 1e-12 * scale * max(float(np.abs(g.values).max()), 1.0),
    )
    # E_k(f) = f when f is already level <= k
    coarse = expectation(f, f.level)
    m4 = bool_margin(bool(np.array_equal(coarse.values, f.values)))
    return min(m1, m2, m3, m4)


def _square_l2(payload, ctx):
    f = payload["f"]
    s = square_function(f)
    lhs = (s * s).integral()
    rhs = (abs(f) * abs(f)).integral()
    return margin_eq(float(lhs), float(rhs), 1e-12 * max(abs(rhs), 1e-12))


def weak_type_sup(vals: np.ndarray) -> float:
    """Exact sup over lambda > 0 of lambda * |{vals > lambda}|.

    The measure function is a right-continuous step in lambda, so the
    supremum is max over consecutive distinct thresholds t_i < t_{i+1} of
    t_{i+1} * |{vals > t_i}|, evaluated here with one sort.
    """
    n = vals.size
    sorted_vals = np.sort(vals)
    thresholds = np.unique(np.concatenate([[0.0], vals]))
    counts = n - np.searchsorted(sorted_vals, thresholds[:-1], side="right")
    if thresholds.size < 2:
        return 0.0
    return float((thresholds[1:] * counts).max() / n)


def _sample_weak_type(rng, ctx):
    # Canonical extremal shapes first, then random data.
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return {"f": DyadicStepFunction.constant(float(rng.uniform(0.5, 2.0)), 2)}
    if kind == 1:
        level = int(pick(rng, _levels(ctx)))
        vals = np.zeros(1 << level)
        vals[int(rng.integers(1 << level))] = float(2**level)
        return {"f": DyadicStepFunction(level, vals)}
    return {"f": rand_step(rng, _levels(ctx), bool(rng.integers(2)))}


def _weak_type_maximal(payload, ctx):
    f = payload["f"]
    m = maximal_function(f)
    sup = weak_type_sup(m.values)
    bound = ctx.constants["maximal_weak_type"] * abs(f).integral()
    return margin_le(sup, bound, 1e-12 * max(bound, 1.0))


def _weak_type_square(payload, ctx):
    f = payload["f"]
    s = square_function(f)
    sup = weak_type_sup(s.values)
    bound = ctx.constants["square_weak_type"] * abs(f).integral()
    return margin_le(sup, bound, 1e-12 * max(bound, 1.0))


def modified_weak_type_margin(
    f_abs: np.ndarray, m_vals: np.ndarray, c: float
) -> float:
    """Worst margin of |{M > 2 lambda}| <= (c/lambda) int_{|f|>lambda} |f|.

    Both sides are piecewise in lambda with breakpoints at the M-values/2
    and the |f|-values; within each interval the left side is constant and
    the right side decreasing, so the binding comparison per interval
    (a, b) is |{M > 2a}| against (c/b) int_{|f| > a} |f|.
    """
    n = f_abs.size
    breakpoints = np.unique(np.concatenate([[0.0], m_vals / 2.0, f_abs]))
    if breakpoints.size < 2:
        return 0.0
    lows, highs = breakpoints[:-1], breakpoints[1:]
    m_sorted = np.sort(m_vals)
    lhs = (n - np.searchsorted(m_sorted, 2.0 * lows, side="right")) / n
    order = np.argsort(f_abs)
    f_sorted = f_abs[order]
    suffix = np.concatenate([np.cumsum(f_sorted[::-1])[::-1], [0.0]])
    nums = suffix[np.searchsorted(f_sorted, lows, side="right")] / n
    rhs = c * nums / highs
    margins = rhs - lhs + 1e-12 * np.maximum(rhs, 1.0)
    return float(margins.min())


def _modified_weak_type(payload, ctx):
    f = payload["f"]
    return modified_weak_type_margin(
        np.abs(f.values),
        maximal_function(f).values,
        ctx.constants["modified_weak_type"],
    )


def _maximal_lp(payload, ctx):
    f = payload["f"]
    base = ctx.constants["maximal_lp_base"]
    sign = ctx.constants["maximal_lp_sign"]
    m = maximal_function(f)
    worst = np.inf
    for p in (1.1, 1.5, 2.0, 3.0, 4.0):
        lhs = float(np.mean(m.values**p))
        rhs = sign * base**p * p / (p - 1.0) * float(np.mean(np.abs(f.values) ** p))
        scale = max(abs(rhs), 1e-12)
        worst = min(worst, (rhs - lhs) / scale + 1e-12)
    return float(worst)


def _superlevel_union(payload, ctx):
    f = payload["f"]
    s = square_function(f)
    lam = float(np.quantile(s.values, payload["q"]))
    cells = superlevel_cells(s, lam)
    mask = np.zeros(1 << s.level, dtype=bool)
    for c in cells:
        width = 1 << (s.level - c.level)
        mask[c.index * width : (c.index + 1) * width] = True
    exact = bool(np.array_equal(mask, s.values > lam))
    return bool_margin(exact and _pairwise_disjoint(cells, s.level))


def _expectation_contraction(payload, ctx):
    f, j = payload["f"], payload["j"]
    beta = abs(f)
    worst = np.inf
    for p in (1.0, 1.5, 2.0, 3.0):
        lhs = float(np.mean(expectation(beta, j).values ** p))
        rhs = float(np.mean(beta.values**p))
        worst = min(worst, margin_le(lhs, rhs, 1e-12 * max(rhs, 1.0)))
    return float(worst)


def _auxiliary_base_cases(payload, ctx):
    fs = [abs(payload["f"]), abs(payload["g"]), abs(payload["h"])]
    level = max(f.level for f in fs)
    fs = [f.refine(level) for f in fs]
    base = ctx.constants["maximal_lp_base"]
    worst = np.inf
    for p in (1.5, 2.0, 3.0):
        # r = p: sum_j int E_j(beta_j)^p <= sum_j int beta_j^p
        lhs = sum(float(np.mean(expectation(b, j).values ** p)) for j, b in enumerate(fs))
        rhs = sum(float(np.mean(b.values**p)) for b in fs)
        worst = min(worst, margin_le(lhs, rhs, 1e-12 * max(rhs, 1.0)))
        # r = inf: int (max_j E_j(beta_j))^p <= C_p int (max_j beta_j)^p
        emax = np.maximum.reduce(
            [expectation(b, j).values for j, b in enumerate(fs)]
        )
        bmax = np.maximum.reduce([b.values for b in fs])
        lhs_inf = float(np.mean(emax**p))
        rhs_inf = base**p * p / (p - 1.0) * float(np.mean(bmax**p))
        worst = min(worst, margin_le(lhs_inf, rhs_inf, 1e-12 * max(rhs_inf, 1.0)))
    return float(worst)


def _haar_orthogonality(payload, ctx):
    level = 5
    intervals = [
        DyadicInterval(k, i) for k in range(level) for i in range(1 << k)
    ]
    worst = np.inf
    one = DyadicStepFunction.constant(1.0, level)
    for a, b in itertools.combinations(intervals, 2):
        ha, hb = haar_function(a, level), haar_function(b, level)
        worst = min(worst, margin_le(abs((ha * hb).integral()), 0.0, 1e-13))
    for a in intervals:
        ha = haar_function(a, level)
        worst = min(worst, margin_eq((ha * ha).integral(), 1.0, 1e-13))
        worst = min(worst, margin_le(abs((one * ha).integral()), 0.0, 1e-13))
    return float(worst)


def _haar_roundtrip(payload, ctx):
    f = payload["f"]
    coeffs = haar_transform(f)
    back = haar_reconstruct(coeffs)
    scale = max(float(np.abs(f.values).max()), 1.0)
    roundtrip = margin_le(
        float(np.abs(back.values - f.values).max()), 0.0, 1e-13 * scale
    )
    energy = abs(coeffs.constant) ** 2 + sum(
        abs(c) ** 2 for c in coeffs.by_interval.values()
    )
    parseval = margin_eq(
        float(energy), float((abs(f) * abs(f)).integral()), 1e-13 * max(scale**2, 1.0)
    )
    # A Haar function is its own expansion.
    if f.level >= 1:
        interval = DyadicInterval(0, 0)
        hco = haar_transform(haar_function(interval, f.level))
        self_coeff = margin_eq(abs(hco.by_interval[interval]), 1.0, 1e-13)
        others = max(
            (abs(c) for key, c in hco.by_interval.items() if key != interval),
            default=0.0,
        )
        clean = margin_le(max(others, abs(hco.constant)), 0.0, 1e-13)
        return min(roundtrip, parseval, self_coeff, clean)
    return min(roundtrip, parseval)


def _maximal_linearization_check(payload, ctx):
    f, h = payload["f"], payload["g"]
    level = max(f.level, h.level)
    f = f.refine(level)
    h = h.refine(level)
    _, apply_op = maximal_linearization(f)
    mf = maximal_function(f)
    attain = margin_le(
        float(np.abs(np.abs(apply_op(f).values) - mf.values).max()), 0.0, 1e-12
    )
    mh = maximal_function(h)
    dominated = margin_le(
        float(np.max(np.abs(apply_op(h).values) - mh.values)), 0.0, 1e-12
    )
    return min(attain, dominated)


def _all_dyadic_intervals(level: int):
    return [
        DyadicInterval(k, i) for k in range(level + 1) for i in range(1 << k)
    ]


def _interval_mask(interval: DyadicInterval, level: int) -> np.ndarray:
    mask = np.zeros(1 << level, dtype=bool)
    width = 1 << (level - interval.level)
    mask[interval.index * width : (interval.index + 1) * width] = True
    return mask


def _sample_stopping(rng, ctx):
    f = rand_step(rng, _levels(ctx), complex_field=False, scale=2.0)
    return {"f": f, "q": float(rng.uniform(0.05, 0.95))}


def _pairwise_disjoint(intervals, level: int) -> bool:
    """Disjointness via measure: the union mask has the summed length."""
    union = np.zeros(1 << level, dtype=bool)
    total = 0
    for interval in intervals:
        width = 1 << (level - interval.level)
        union[interval.index * width : (interval.index + 1) * width] = True
        total += width
    return int(union.sum()) == total


def _stopping_average(payload, ctx):
    f = payload["f"]
    m = maximal_function(f)
    lam = float(np.quantile(m.values, payload["q"]))
    if lam <= 0:
        lam = float(m.values.max()) / 2.0
    if lam <= 0:
        return 0.0
    dec = stopping_decompose(f, lam, "average-threshold")
    worsts = []
    # Disjointness of both families.
    worsts.append(bool_margin(_pairwise_disjoint(dec.maximal_intervals, f.level)))
    worsts.append(bool_margin(_pairwise_disjoint(dec.halved_parents, f.level)))
    if dec.degenerate:
        # The whole interval exceeded the threshold; f must be unchanged.
        worsts.append(bool_margin(dec.replaced == f))
        return min(worsts)
    # Parent measure bound.
    parent_len = sum(float(i.length) for i in dec.halved_parents)
    top_len = sum(float(i.length) for i in dec.maximal_intervals)
    worsts.append(margin_le(parent_len, 2.0 * top_len, 1e-12))
    # |f_lam| <= min(lam, M(f)) pointwise.
    cap = np.minimum(lam, m.values)
    worsts.append(
        margin_le(float(np.max(np.abs(dec.replaced.values) - cap)), 0.0, 1e-12)
    )
    # Average preservation on qualifying dyadic K, level by level through
    # the expectation ladders: K qualifies when it meets the complement of
    # the parent union or contains one of the parents.
    covered = np.zeros(1 << f.level, dtype=bool)
    for interval in dec.halved_parents:
        covered |= _interval_mask(interval, f.level)
    scale = max(float(np.abs(f.values).max()), 1.0)
    ladder_f = expectation_ladder(f)
    ladder_r = expectation_ladder(dec.replaced)
    for k in range(f.level + 1):
        width = 1 << (f.level - k)
        fully_covered = covered.reshape(-1, width).all(axis=1)
        has_parent = np.zeros(1 << k, dtype=bool)
        for parent in dec.halved_parents:
            if parent.level >= k:
                has_parent[parent.index >> (parent.level - k)] = True
        qualifying = ~fully_covered | has_parent
        if not qualifying.any():
            continue
        avg_f = ladder_f[k][::width][qualifying]
        avg_r = ladder_r[k][::width][qualifying]
        gap = float(np.abs(avg_f - avg_r).max())
        worsts.append(margin_le(gap, 0.0, 1e-12 * scale))
    return float(min(worsts))


def _stopping_square(payload, ctx):
    f = payload["f"]
    s = square_function(f)
    lam = float(np.quantile(s.values, payload["q"]))
    if lam <= 0:
        lam = float(s.values.max()) / 2.0
    if lam <= 0:
        return 0.0
    dec = stopping_decompose(f, lam, "square-threshold")
    worsts = []
    mask = s.values > lam
    union = np.zeros_like(mask)
    for interval in dec.maximal_intervals:
        union |= _interval_mask(interval, f.level)
    worsts.append(bool_margin(bool(np.array_equal(union, mask))))
    if dec.degenerate:
        worsts.append(bool_margin(dec.replaced == f))
        return min(worsts)
    parent_len = sum(float(i.length) for i in dec.halved_parents)
    worsts.append(margin_le(parent_len, 2.0 * float(np.mean(mask)), 1e-12))
    s_replaced = square_function(dec.replaced)
    cap = np.minimum(lam, s.values)
    worsts.append(
        margin_le(float(np.max(s_replaced.values - cap)), 0.0, 1e-10)
    )
    return float(min(worsts))


def _layer_cake_check(payload, ctx):
    f = payload["f"]
    g = abs(f)
    p = payload["p"]
    direct, layered = layer_cake(g, p)
    return margin_eq(direct, layered, 1e-12 * max(direct, 1e-12))


def _distribution_smoke(payload, ctx):
    f = payload["f"]
    g = abs(f)
    lam = payload["lam"]
    meas = distribution_measure(g, lam)
    direct = float(np.mean(g.values > lam))
    worsts = [margin_eq(meas, direct, 0.0)]
    worsts.append(margin_eq(distribution_measure(g, -1.0), 1.0, 0.0))
    worsts.append(
        margin_eq(distribution_measure(g, float(g.values.max())), 0.0, 0.0)
    )
    return min(worsts)


def _tail_square(payload, ctx):
    rep = tail_square_report(payload["f"])
    return margin_le(rep.cell_identity_residual, 0.0, 1e-12)


def _sample_khintchine(rng, ctx):
    n = int(rng.integers(1, 11))
    return {"a": rng.uniform(-1.5, 1.5, n), "n": n}


def _khintchine(payload, ctx):
    a = np.asarray(payload["a"])
    ps = [1.0, 1.5, 2.0]
    qs = [2.0, 3.0, 4.0]
    rep = khintchine_report(a, ps + qs)
    sigma = rep.sigma
    scale = max(sigma, 1.0)
    worsts = []
    for row in rep.rows:
        if row.p <= 2.0:
            worsts.append(margin_le(row.lp_norm, sigma, 1e-12 * scale))
        if row.p >= 2.0:
            worsts.append(margin_le(sigma, row.lp_norm, 1e-12 * scale))
    worsts.append(
        margin_eq(
            rep.fourth_moment, rep.fourth_moment_identity, 1e-12 * max(sigma**4, 1.0)
        )
    )
    worsts.append(margin_eq(rep.max_value, rep.coeff_abs_sum, 1e-12 * scale))
    return float(min(worsts))


def _walsh_orthonormal(payload, ctx):
    level = 4
    subsets = []
    for r in range(level + 1):
        subsets.extend(itertools.combinations(range(1, level + 1), r))
    worst = np.inf
    fs = {s: walsh(s, level) for s in subsets}
    for s1, s2 in itertools.combinations(subsets, 2):
        worst = min(
            worst, margin_le(abs((fs[s1] * fs[s2]).integral()), 0.0, 1e-14)
        )
    for s in subsets:
        worst = min(worst, margin_eq((fs[s] * fs[s]).integral(), 1.0, 1e-14))
    # rademacher(j) = walsh({j}); values alternate starting at +1.
    r1 = rademacher(1, 1)
    worst = min(worst, bool_margin(bool(np.array_equal(r1.values, [1.0, -1.0]))))
    w12 = walsh({1, 2}, 2)
    worst = min(
        worst, bool_margin(bool(np.array_equal(w12.values, [1.0, -1.0, -1.0, 1.0])))
    )
    # S(sum a_j r_j) is the constant (sum a_j^2)^(1/2).
    a = np.array([0.75, -0.5, 1.25])
    f = sum(a[j] * rademacher(j + 1, 3) for j in range(3))
    s = square_function(f)
    sigma = float(np.sqrt(np.sum(a**2)))
    worst = min(
        worst, margin_le(float(np.abs(s.values - sigma).max()), 0.0, 1e-12)
    )
    return float(worst)


def _bilinear_square_duality(payload, ctx):
    f = abs(payload["f"])
    g = abs(payload["g"])
    lhs = abs((f * g).integral())
    rhs = (square_function(f) * square_function(g)).integral()
    return margin_le(lhs, float(rhs), 1e-12 * max(abs(rhs), 1.0))


def _interval_nesting(payload, ctx):
    intervals = _all_dyadic_intervals(6)
    level = 6
    for a, b in itertools.combinations(intervals, 2):
        ma, mb = _interval_mask(a, level), _interval_mask(b, level)
        overlap = np.any(ma & mb)
        nested = (ma & mb).sum() in (0, ma.sum(), mb.sum())
        if overlap and not (a.contains(b) or b.contains(a)):
            return -1.0
        if not nested:
            return -1.0
        if not overlap and not a.disjoint(b):
            return -1.0
    return 0.0


# -- golden empirical ratio suites ---------------------------------------

_RATIO_SPECS = [
    ("s_over_m", 0.5), ("s_over_m", 1.0), ("s_over_m", 1.5),
    ("m_over_s", 0.5), ("m_over_s", 1.0), ("m_over_s", 1.5),
    ("f_over_s", 3.0), ("f_over_s", 4.0),
    ("s_over_f", 3.0), ("s_over_f", 4.0),
    ("s4_chain", 4.0),
]


def _ratio_value(family: str, p: float, f: DyadicStepFunction) -> float | None:
    s = square_function(f).values
    m = maximal_function(f).values
    fa = np.abs(f.values)
    if family == "s_over_m":
        num, den = np.mean(s**p), np.mean(m**p)
    elif family == "m_over_s":
        num, den = np.mean(m**p), np.mean(s**p)
    elif family == "f_over_s":
        num, den = np.mean(fa**p), np.mean(s**p)
    elif family == "s_over_f":
        num, den = np.mean(s**p), np.mean(fa**p)
    elif family == "s4_chain":
        m_fsq = maximal_function(DyadicStepFunction(f.level, fa**2)).values
        num, den = np.mean(s**4), np.mean(s**2 * m_fsq)
    else:
        raise ValueError(family)
    if den <= 0:
        return None
    return float(num / den)


def observed_ratio_max(family: str, p: float, count: int = _GOLDEN_TRIALS) -> float:
    check_id = f"dyadic.golden_{family}_p{p:g}"
    worst = 0.0
    for i in range(count):
        rng = trial_rng(0, check_id, i)
        f = rand_step(rng, _GOLDEN_LEVELS, complex_field=False)
        val = _ratio_value(family, p, f)
        if val is not None:
            worst = max(worst, val)
    return worst


def _golden_eval(payload, ctx):
    family, p = payload["family"], payload["p"]
    check_id = f"dyadic.golden_{family}_p{p:g}"
    observed = observed_ratio_max(family, p, int(payload["count"]))
    golden = ctx.constants.get(f"golden:{check_id}", ctx.goldens.get(check_id))
    if golden is None:
        return -np.inf
    band = ctx.constants["golden_band"]
    return min(golden * (1.0 + band) - observed, observed - golden * (1.0 - band))


def build() -> list[Check]:
    checks = [
        Check(
            "dyadic.expectation_self_adjoint", "dyadic",
            "int E_j(f) g = int f E_j(g) = int E_j(f) E_j(g)",
            _sample_fg, _expectation_self_adjoint,
        ),
        Check(
            "dyadic.martingale_orthogonality", "dyadic",
            "For any functions f, g and positive integers j, k",
            _sample_fg, _martingale_orthogonality,
        ),
        Check(
            "dyadic.expectation_idempotent", "dyadic",
            "E_j(E_k(f)) = E_k(f) when j >= k",
            _sample_fg, _expectation_idempotent,
        ),
        Check(
            "dyadic.square_l2_identity", "dyadic",
            "int S(f)^2 = int |f|^2",
            _sample_f, _square_l2,
        ),
        Check(
            "dyadic.weak_type_maximal", "dyadic",
            "Weak-type estimate for M(f)",
            _sample_weak_type, _weak_type_maximal,
        ),
        Check(
            "dyadic.modified_weak_type", "dyadic",
            "modified weak-type inequality for M(f)",
            _sample_weak_type, _modified_weak_type,
        ),
        Check(
            "dyadic.maximal_lp_bound", "dyadic",
            "int M(f)^p <= 2^p p/(p-1) int |f|^p",
            _sample_weak_type, _maximal_lp,
        ),
        Check(
            "dyadic.weak_type_square", "dyadic",
            "Weak-type estimate for S(f) with constant 3",
            _sample_weak_type, _weak_type_square,
        ),
        Check(
            "dyadic.square_superlevel_cells", "dyadic",
            "{S(f) > lambda} is a union of dyadic subintervals",
            _sample_stopping, _superlevel_union,
        ),
        Check(
            "dyadic.expectation_contraction", "dyadic",
            "int E_j(beta)^p <= int beta^p",
            _sample_fg, _expectation_contraction,
        ),
        Check(
            "dyadic.auxiliary_base_cases", "dyadic",
            "same estimates for (p, r) base cases r = p and r = infinity",
            lambda rng, ctx: {
                "f": rand_step(rng, _levels(ctx)),
                "g": rand_step(rng, _levels(ctx)),
                "h": rand_step(rng, _levels(ctx)),
            },
            _auxiliary_base_cases,
        ),
        Check(
            "dyadic.haar_orthogonality", "dyadic",
            "the Haar functions satisfy the orthogonality property",
            lambda rng, ctx: {}, _haar_orthogonality, trials=1,
        ),
        Check(
            "dyadic.haar_roundtrip", "dyadic",
            "f = <f,h_0> h_0 + sum_I <f,h_I> h_I",
            _sample_f, _haar_roundtrip,
        ),
        Check(
            "dyadic.maximal_linearization", "dyadic",
            "One can approximate maximal functions by E_{alpha(x)}(f)(x)",
            _sample_fg, _maximal_linearization_check,
        ),
        Check(
            "dyadic.stopping_average", "dyadic",
            "Let f_lambda(x) be the function on [0,1) defined by",
            _sample_stopping, _stopping_average,
        ),
        Check(
            "dyadic.stopping_square", "dyadic",
            "S(g_lambda) <= min(lambda, S(f))",
            _sample_stopping, _stopping_square,
        ),
        Check(
            "dyadic.layer_cake", "dyadic",
            "int g^p = int_0^inf p lambda^(p-1) |{g > lambda}| d lambda",
            lambda rng, ctx: {
                "f": rand_step(rng, _levels(ctx), bool(rng.integers(2))),
                "p": float(pick(rng, [0.5, 1.0, 2.0, 3.0])),
            },
            _layer_cake_check,
        ),
        Check(
            "dyadic.distribution_measure", "dyadic",
            "|{x in [0,1) : M(f)(x) > lambda}| set measure",
            lambda rng, ctx: {
                "f": rand_step(rng, _levels(ctx)),
                "lam": float(rng.uniform(0.0, 1.0)),
            },
            _distribution_smoke,
        ),
        Check(
            "dyadic.tail_square_identity", "dyadic",
            "int_I (|E_j(f)|^2 + R_{j+1}(f)^2) = int_I |f|^2",
            _sample_f, _tail_square,
        ),
        Check(
            "dyadic.khintchine", "dyadic",
            "||f||_p <= (sum a_j^2)^(1/2) <= ||f||_q and max |f| = sum |a_j|",
            _sample_khintchine, _khintchine,
        ),
        Check(
            "dyadic.walsh_orthonormal", "dyadic",
            "the Walsh functions form an orthonormal basis",
            lambda rng, ctx: {}, _walsh_orthonormal, trials=1,
        ),
        Check(
            "dyadic.bilinear_square_duality", "dyadic",
            "|int f_1 f_2| <= int S(f_1) S(f_2)",
            _sample_fg, _bilinear_square_duality,
        ),
        Check(
            "dyadic.interval_nesting", "dyadic",
            "either J_1 <= J_2, or J_2 <= J_1, or disjoint",
            lambda rng, ctx: {}, _interval_nesting, trials=1,
        ),
    ]
    for family, p in _RATIO_SPECS:
        check_id = f"dyadic.golden_{family}_p{p:g}"
        checks.append(
            Check(
                check_id, "dyadic",
                "bounded empirical constants C_1(p), C_2(p), C_3(q), C_4(q)",
                (lambda fam, pp: lambda rng, ctx: {
                    "family": fam, "p": pp, "count": _GOLDEN_TRIALS,
                })(family, p),
                _golden_eval,
                trials=1,
                pinned=True,
            )
        )
    return checks
