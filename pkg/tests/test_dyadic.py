import itertools

import numpy as np
import pytest

from normlab.dyadic import (
    DyadicInterval,
    DyadicStepFunction,
    distribution_measure,
    expectation,
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


def rand_step(rng, level, complex_field=False):
    vals = rng.uniform(-1, 1, 1 << level)
    if complex_field:
        vals = vals + 1j * rng.uniform(-1, 1, 1 << level)
    return DyadicStepFunction(level, vals)


class TestIntervals:
    def test_lengths(self):
        assert float(DyadicInterval(3, 5).length) == 0.125

    def test_validation(self):
        with pytest.raises(ValueError):
            DyadicInterval(2, 4)
        with pytest.raises(ValueError):
            DyadicInterval(-1, 0)

    def test_halves_and_parent(self):
        left, right = DyadicInterval(1, 0).halves()
        assert left == DyadicInterval(2, 0)
        assert right == DyadicInterval(2, 1)
        assert left.parent() == DyadicInterval(1, 0)

    def test_nested_or_disjoint_exhaustive(self):
        intervals = [
            DyadicInterval(k, i) for k in range(7) for i in range(1 << k)
        ]
        for a, b in itertools.combinations(intervals, 2):
            nested = a.contains(b) or b.contains(a)
            lo_a, hi_a = float(a.left_endpoint), float(a.left_endpoint + a.length)
            lo_b, hi_b = float(b.left_endpoint), float(b.left_endpoint + b.length)
            overlap = lo_a < hi_b and lo_b < hi_a
            assert nested == overlap
            assert a.disjoint(b) == (not nested)


class TestStepFunction:
    def test_integral_exact(self):
        f = DyadicStepFunction(2, [1.0, 2.0, 3.0, 4.0])
        assert f.integral() == 2.5

    def test_refine_preserves(self):
        f = DyadicStepFunction(1, [1.0, -1.0])
        g = f.refine(3)
        assert g.level == 3
        assert f == g

    def test_arithmetic_mixed_levels(self):
        f = DyadicStepFunction(1, [1.0, 0.0])
        g = DyadicStepFunction(2, [1.0, 2.0, 3.0, 4.0])
        assert np.allclose((f + g).values, [2.0, 3.0, 3.0, 4.0])

    def test_lp_norms(self):
        f = DyadicStepFunction(1, [3.0, -4.0])
        assert f.lp_norm(2) == pytest.approx(np.sqrt(12.5))
        assert f.lp_norm("inf") == 4.0
        assert f.lp_norm(0.5) == pytest.approx(
            ((np.sqrt(3) + 2) / 2) ** 2, rel=1e-12
        )

    def test_serialization_roundtrip(self):
        rng = np.random.default_rng(0)
        f = rand_step(rng, 3)
        assert DyadicStepFunction.deserialize(f.serialize()) == f
        g = rand_step(rng, 2, complex_field=True)
        assert DyadicStepFunction.deserialize(g.serialize()) == g

    def test_level_cap(self):
        with pytest.raises(ValueError):
            DyadicStepFunction(15, np.zeros(1 << 15))


class TestExpectation:
    def test_halves_average(self):
        f = DyadicStepFunction.indicator(DyadicInterval(1, 0))
        assert np.allclose(expectation(f, 0).values, [0.5, 0.5])

    def test_fine_k_is_identity(self):
        rng = np.random.default_rng(1)
        f = rand_step(rng, 3)
        assert expectation(f, 3) == f
        assert expectation(f, 7) == f

    def test_haar_killed_by_coarse_average(self):
        h = haar_function(DyadicInterval(1, 0), 4)
        assert np.allclose(expectation(h, 1).values, 0.0)

    def test_tower_property(self):
        rng = np.random.default_rng(2)
        f = rand_step(rng, 5)
        for j in range(6):
            for k in range(j + 1):
                lhs = expectation(expectation(f, j), k)
                rhs = expectation(f, k)
                assert np.abs(lhs.values - rhs.values).max() <= 1e-14

    def test_module_multiplicativity(self):
        rng = np.random.default_rng(3)
        f = rand_step(rng, 4)
        g = expectation(rand_step(rng, 4), 2)  # level-2 measurable
        lhs = expectation(g * f, 2)
        rhs = g * expectation(f, 2)
        assert np.abs(lhs.values - rhs.values).max() <= 1e-14


class TestMaximalFunction:
    def test_indicator(self):
        f = DyadicStepFunction.indicator(DyadicInterval(1, 0))
        assert np.allclose(maximal_function(f).values, [1.0, 0.5])

    def test_constant(self):
        f = DyadicStepFunction.constant(-3.0, 2)
        assert np.allclose(maximal_function(f).values, 3.0)

    def test_sup_bound(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            f = rand_step(rng, int(rng.integers(1, 8)))
            bound = np.abs(f.values).max()
            assert np.all(maximal_function(f).values <= bound + 1e-14)

    def test_sublinear(self):
        rng = np.random.default_rng(5)
        f, g = rand_step(rng, 5), rand_step(rng, 5)
        lhs = maximal_function(f + g).values
        rhs = maximal_function(f).values + maximal_function(g).values
        assert np.all(lhs <= rhs + 1e-13)


class TestSquareFunction:
    def test_indicator(self):
        f = DyadicStepFunction.indicator(DyadicInterval(1, 0))
        s = square_function(f)
        assert np.allclose(s.values, np.sqrt(0.5))
        assert (s * s).integral() == pytest.approx((f * f).integral())

    def test_constant(self):
        f = DyadicStepFunction.constant(2.5, 3)
        assert np.allclose(square_function(f).values, 2.5)

    def test_rademacher_combination_constant(self):
        a = np.array([1.0, -2.0, 0.5])
        f = sum(a[j] * rademacher(j + 1, 3) for j in range(3))
        s = square_function(f)
        assert np.allclose(s.values, np.sqrt(np.sum(a**2)))

    def test_l2_identity_random(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            f = rand_step(rng, int(rng.integers(1, 10)), bool(rng.integers(2)))
            s = square_function(f)
            lhs = (s * s).integral()
            rhs = (abs(f) * abs(f)).integral()
            assert abs(lhs - rhs) <= 1e-12 * max(abs(rhs), 1e-12)


class TestHaar:
    def test_self_coefficient(self):
        interval = DyadicInterval(1, 1)
        h = haar_function(interval, 4)
        coeffs = haar_transform(h)
        assert coeffs.by_interval[interval] == pytest.approx(1.0)
        others = [
            abs(c) for key, c in coeffs.by_interval.items() if key != interval
        ]
        assert max(others) <= 1e-14
        assert abs(coeffs.constant) <= 1e-14

    def test_constant_function(self):
        f = DyadicStepFunction.constant(1.0, 3)
        coeffs = haar_transform(f)
        assert coeffs.constant == pytest.approx(1.0)
        assert max(abs(c) for c in coeffs.by_interval.values()) <= 1e-15

    def test_roundtrip_and_parseval(self):
        rng = np.random.default_rng(7)
        for _ in range(100)[:100]:
            f = rand_step(rng, 4, bool(rng.integers(2)))
            coeffs = haar_transform(f)
            back = haar_reconstruct(coeffs)
            assert np.abs(back.values - f.values).max() <= 1e-13
            energy = abs(coeffs.constant) ** 2 + sum(
                abs(c) ** 2 for c in coeffs.by_interval.values()
            )
            assert energy == pytest.approx(
                (abs(f) * abs(f)).integral(), abs=1e-13
            )

    def test_orthonormality_exhaustive(self):
        level = 5
        intervals = [
            DyadicInterval(k, i) for k in range(level) for i in range(1 << k)
        ]
        hs = {i: haar_function(i, level) for i in intervals}
        one = DyadicStepFunction.constant(1.0, level)
        for a, b in itertools.combinations(intervals, 2):
            assert abs((hs[a] * hs[b]).integral()) <= 1e-14
        for a in intervals:
            assert (hs[a] * hs[a]).integral() == pytest.approx(1.0)
            assert abs((one * hs[a]).integral()) <= 1e-14

    def test_haar_negative_on_left_half(self):
        h = haar_function(DyadicInterval(0, 0), 1)
        assert h.values[0] == -1.0 and h.values[1] == 1.0


class TestDistribution:
    def test_constant_level_zero(self):
        g = DyadicStepFunction.constant(1.0, 0)
        assert distribution_measure(g, 0.0) == 1.0
        assert distribution_measure(g, 1.0) == 0.0

    def test_indicator_quarter(self):
        g = DyadicStepFunction.indicator(DyadicInterval(2, 0))
        assert distribution_measure(g, 0.5) == 0.25

    def test_complex_rejected(self):
        g = DyadicStepFunction(0, [1j])
        with pytest.raises(ValueError):
            distribution_measure(g, 0.0)

    def test_layer_cake_hand(self):
        g = DyadicStepFunction(1, [2.0, 0.0])
        assert layer_cake(g, 1.0) == (1.0, 1.0)

    def test_layer_cake_constant(self):
        g = DyadicStepFunction.constant(1.0, 0)
        assert layer_cake(g, 2.0) == (1.0, 1.0)

    def test_layer_cake_random(self):
        rng = np.random.default_rng(8)
        for p in (0.5, 1.0, 2.0, 3.0):
            for _ in range(50):
                g = DyadicStepFunction(
                    5, np.abs(rng.uniform(-1, 1, 32))
                )
                direct, layered = layer_cake(g, p)
                assert abs(direct - layered) <= 1e-12 * max(direct, 1e-12)

    def test_layer_cake_validation(self):
        g = DyadicStepFunction(0, [-1.0])
        with pytest.raises(ValueError):
            layer_cake(g, 1.0)


class TestStopping:
    def test_spike_lambda_three(self):
        f = 4.0 * DyadicStepFunction.indicator(DyadicInterval(2, 0))
        dec = stopping_decompose(f, 3.0)
        assert dec.maximal_intervals == (DyadicInterval(2, 0),)
        assert dec.halved_parents == (DyadicInterval(1, 0),)
        assert np.allclose(dec.replaced.values, [2.0, 2.0, 0.0, 0.0])

    def test_spike_lambda_between(self):
        # At threshold 1.5 the interval [0, 1/2) with average 2 is already
        # selected, so its parent [0, 1) carries the replacement average 1.
        f = 4.0 * DyadicStepFunction.indicator(DyadicInterval(2, 0))
        dec = stopping_decompose(f, 1.5)
        assert dec.maximal_intervals == (DyadicInterval(1, 0),)
        assert dec.halved_parents == (DyadicInterval(0, 0),)
        assert np.allclose(dec.replaced.values, 1.0)

    def test_zero_function(self):
        f = DyadicStepFunction.constant(0.0, 3)
        dec = stopping_decompose(f, 1.0)
        assert dec.maximal_intervals == ()
        assert dec.replaced == f

    def test_threshold_above_maximal(self):
        rng = np.random.default_rng(9)
        f = rand_step(rng, 4)
        lam = float(maximal_function(f).values.max()) + 0.5
        dec = stopping_decompose(f, lam)
        assert dec.maximal_intervals == ()
        assert dec.replaced == f

    def test_degenerate_branch(self):
        f = 4.0 * DyadicStepFunction.indicator(DyadicInterval(2, 0))
        dec = stopping_decompose(f, 0.5)
        assert dec.degenerate
        assert dec.halved_parents == ()
        assert dec.replaced == f

    def test_validation(self):
        f = DyadicStepFunction.constant(1.0, 1)
        with pytest.raises(ValueError):
            stopping_decompose(f, 0.0)
        with pytest.raises(ValueError):
            stopping_decompose(f, 1.0, "bogus-mode")

    def test_average_contract_random(self):
        rng = np.random.default_rng(10)
        for _ in range(100):
            f = rand_step(rng, int(rng.integers(1, 8)))
            m = maximal_function(f)
            lam = float(np.quantile(m.values, rng.uniform(0.2, 0.9)))
            if lam <= 0:
                continue
            dec = stopping_decompose(f, lam)
            if dec.degenerate:
                continue
            cap = np.minimum(lam, m.values)
            assert np.all(np.abs(dec.replaced.values) <= cap + 1e-12)
            total_parent = sum(float(i.length) for i in dec.halved_parents)
            total_top = sum(float(i.length) for i in dec.maximal_intervals)
            assert total_parent <= 2.0 * total_top + 1e-12

    def test_square_contract_random(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            f = rand_step(rng, int(rng.integers(1, 8)))
            s = square_function(f)
            lam = float(np.quantile(s.values, rng.uniform(0.2, 0.9)))
            if lam <= 0:
                continue
            dec = stopping_decompose(f, lam, "square-threshold")
            if dec.degenerate:
                continue
            s_rep = square_function(dec.replaced)
            cap = np.minimum(lam, s.values)
            assert np.all(s_rep.values <= cap + 1e-10)

    def test_superlevel_cells_reproduce_set(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            f = rand_step(rng, 6)
            s = square_function(f)
            lam = float(np.quantile(s.values, 0.6))
            cells = superlevel_cells(s, lam)
            mask = np.zeros(64, dtype=bool)
            for c in cells:
                width = 1 << (6 - c.level)
                mask[c.index * width : (c.index + 1) * width] = True
            assert np.array_equal(mask, s.values > lam)


class TestRademacherWalsh:
    def test_r1(self):
        assert np.array_equal(rademacher(1, 1).values, [1.0, -1.0])

    def test_w12(self):
        assert np.array_equal(walsh({1, 2}, 2).values, [1.0, -1.0, -1.0, 1.0])

    def test_empty_walsh_is_one(self):
        assert np.array_equal(walsh(set(), 2).values, np.ones(4))

    def test_index_bounds(self):
        with pytest.raises(ValueError):
            rademacher(3, 2)
        with pytest.raises(ValueError):
            walsh({5}, 4)

    def test_walsh_orthonormal_exhaustive(self):
        level = 4
        subsets = []
        for r in range(level + 1):
            subsets.extend(itertools.combinations(range(1, level + 1), r))
        fs = {s: walsh(s, level) for s in subsets}
        for s1, s2 in itertools.combinations(subsets, 2):
            assert (fs[s1] * fs[s2]).integral() == 0.0
        for s in subsets:
            assert (fs[s] * fs[s]).integral() == 1.0

    def test_khintchine_single(self):
        rep = khintchine_report([1.0], [1, 2, 3])
        assert all(row.lp_norm == pytest.approx(1.0) for row in rep.rows)
        assert rep.sigma == 1.0

    def test_khintchine_pair(self):
        rep = khintchine_report([1.0, 1.0], [4])
        assert rep.fourth_moment == pytest.approx(8.0)
        assert rep.fourth_moment_identity == pytest.approx(8.0)
        assert rep.rows[0].lp_norm == pytest.approx(8.0**0.25)
        assert rep.sigma == pytest.approx(np.sqrt(2.0))

    def test_khintchine_max(self):
        rep = khintchine_report([1.0, 2.0, 3.0], [2])
        assert rep.max_value == pytest.approx(6.0)
        assert rep.coeff_abs_sum == 6.0

    def test_khintchine_sandwich_random(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            a = rng.uniform(-1.5, 1.5, int(rng.integers(1, 11)))
            rep = khintchine_report(a, [1.0, 1.5, 2.0, 3.0, 4.0])
            for row in rep.rows:
                if row.p <= 2:
                    assert row.lp_norm <= rep.sigma + 1e-12
                if row.p >= 2:
                    assert rep.sigma <= row.lp_norm + 1e-12


class TestTailSquare:
    def test_constant_zero_residual(self):
        f = DyadicStepFunction.constant(2.0, 3)
        rep = tail_square_report(f)
        assert rep.cell_identity_residual <= 1e-15

    def test_haar_small_residual(self):
        f = haar_function(DyadicInterval(1, 0), 3)
        rep = tail_square_report(f)
        assert rep.cell_identity_residual <= 1e-15

    def test_random_identity(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            f = rand_step(rng, 6, bool(rng.integers(2)))
            rep = tail_square_report(f)
            assert rep.cell_identity_residual <= 1e-12


class TestMaximalLinearization:
    def test_contract(self):
        rng = np.random.default_rng(15)
        for _ in range(50):
            f = rand_step(rng, 5)
            _, apply_op = maximal_linearization(f)
            mf = maximal_function(f)
            assert np.allclose(np.abs(apply_op(f).values), mf.values)
            h = rand_step(rng, 5)
            mh = maximal_function(h)
            assert np.all(np.abs(apply_op(h).values) <= mh.values + 1e-12)
