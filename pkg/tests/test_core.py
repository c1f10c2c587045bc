import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

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
from normlab.errors import NonConvexError
from normlab.exponents import INF


class TestPNorm:
    def test_pythagorean(self):
        assert p_norm([3.0, 4.0], 2) == pytest.approx(5.0, rel=1e-15)

    def test_sup_norm_of_ones(self):
        assert p_norm([1.0, 1.0, 1.0, 1.0], INF) == 1.0

    def test_one_norm(self):
        assert p_norm([1.0, -2.0, 2.0], 1) == pytest.approx(5.0)

    def test_zero_vector(self):
        assert p_norm([0.0, 0.0], 3.0) == 0.0

    def test_no_overflow_for_huge_entries(self):
        v = np.array([1e300, 1e300])
        assert np.isfinite(p_norm(v, 4.0))
        assert p_norm(v, 4.0) == pytest.approx(1e300 * 2 ** 0.25, rel=1e-12)

    def test_no_underflow_for_tiny_entries(self):
        v = np.array([1e-300, 1e-300])
        assert p_norm(v, 4.0) == pytest.approx(1e-300 * 2 ** 0.25, rel=1e-12)


class TestScalarModulus:
    def test_nonnegative_and_definite(self):
        assert abs(0j) == 0.0
        assert abs(3 - 4j) == 5.0

    def test_multiplicative(self):
        rng = np.random.default_rng(19)
        for _ in range(500):
            z = complex(*rng.uniform(-10, 10, 2))
            w = complex(*rng.uniform(-10, 10, 2))
            lhs = abs(z * w)
            rhs = abs(z) * abs(w)
            assert abs(lhs - rhs) <= 1e-14 * max(rhs, 1.0)


class TestPairings:
    def test_disjoint_supports(self):
        assert pairing([1.0, 0.0], [0.0, 1.0]) == 0.0

    def test_all_ones(self):
        assert pairing([1.0, 1.0], [1.0, 1.0]) == 2.0

    def test_reversed(self):
        assert pairing([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == 10.0

    def test_pairing_does_not_conjugate(self):
        assert pairing([1j], [1j]) == -1.0 + 0j

    def test_inner_product_conjugates(self):
        v = np.array([1j, 1.0])
        assert inner_product(v, v) == pytest.approx(2.0)

    def test_orthogonal_pair(self):
        assert inner_product([1.0, 2.0], [2.0, -1.0]) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            pairing([1.0], [1.0, 2.0])


class TestPolarize:
    def test_real_orthogonal(self):
        out = polarize(euclidean_norm_sq, [1.0, 0.0], [0.0, 1.0], "real")
        assert out == pytest.approx(0.0, abs=1e-14)

    def test_real_self(self):
        out = polarize(euclidean_norm_sq, [1.0, 1.0], [1.0, 1.0], "real")
        assert out == pytest.approx(2.0)

    def test_complex_unit(self):
        # <(1,0), (i,0)> = 1 * conj(i) = -i; the 4-term identity must agree.
        out = polarize(
            euclidean_norm_sq,
            np.array([1.0 + 0j, 0.0]),
            np.array([1j, 0.0]),
            "complex",
        )
        assert out == pytest.approx(-1j, abs=1e-12)

    def test_matches_inner_product_randomly(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = rng.integers(1, 9)
            for field in ("real", "complex"):
                v = rng.standard_normal(n)
                w = rng.standard_normal(n)
                if field == "complex":
                    v = v + 1j * rng.standard_normal(n)
                    w = w + 1j * rng.standard_normal(n)
                got = polarize(euclidean_norm_sq, v, w, field)
                want = inner_product(v, w)
                scale = max(p_norm(v, 2) * p_norm(w, 2), 1.0)
                assert abs(got - want) <= 1e-12 * scale


class TestConvexity:
    def test_square_samples_convex(self):
        f = ConvexSampledFunction([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
        assert difference_quotient_check(f)

    def test_concave_kink_rejected(self):
        f = ConvexSampledFunction([0.0, 1.0, 2.0], [0.0, 2.0, 3.0])
        assert not difference_quotient_check(f)

    def test_absolute_value_convex(self):
        f = ConvexSampledFunction([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0])
        assert difference_quotient_check(f)

    def test_support_line_square(self):
        f = ConvexSampledFunction([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
        slope, intercept = support_line(f, 1)
        # Slopes from the samples: D_l = 1, D_r = 3, midpoint 2.
        assert slope == pytest.approx(2.0)
        assert slope * 1.0 + intercept == pytest.approx(1.0)
        assert 1.0 <= slope <= 3.0

    def test_support_line_abs_at_kink(self):
        f = ConvexSampledFunction([-1.0, 0.0, 1.0], [1.0, 0.0, 1.0])
        slope, intercept = support_line(f, 1)
        assert -1.0 <= slope <= 1.0
        assert intercept == pytest.approx(0.0, abs=1e-15)

    def test_support_line_affine(self):
        grid = np.array([-1.0, 0.5, 2.0, 3.0])
        f = ConvexSampledFunction(grid, 2.0 * grid + 1.0)
        for idx in range(4):
            slope, intercept = support_line(f, idx)
            assert slope == pytest.approx(2.0)
            assert intercept == pytest.approx(1.0)

    def test_support_line_rejects_nonconvex(self):
        f = ConvexSampledFunction([0.0, 1.0, 2.0], [0.0, 2.0, 3.0])
        with pytest.raises(NonConvexError):
            support_line(f, 0)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            ConvexSampledFunction([0.0, 0.0], [1.0, 2.0])


finite_ps = st.sampled_from([1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 10.0])
vectors = st.integers(min_value=1, max_value=16).flatmap(
    lambda n: st.lists(
        st.floats(min_value=-100, max_value=100), min_size=n, max_size=n
    )
)


@settings(max_examples=200, deadline=None)
@given(vectors, finite_ps)
def test_minkowski_hypothesis(vals, p):
    v = np.array(vals)
    w = v[::-1].copy()
    lhs = p_norm(v + w, p)
    rhs = p_norm(v, p) + p_norm(w, p)
    assert lhs <= rhs + 1e-10 * max(rhs, 1.0)


@settings(max_examples=200, deadline=None)
@given(vectors, finite_ps)
def test_holder_hypothesis(vals, p):
    from normlab.exponents import conjugate_exponent

    v = np.array(vals)
    w = np.cos(v)
    q = conjugate_exponent(p)
    rhs = p_norm(v, p) * p_norm(w, q)
    assert abs(pairing(v, w)) <= rhs + 1e-10 * max(rhs, 1.0)
