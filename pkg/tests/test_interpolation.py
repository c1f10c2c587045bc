import numpy as np
import pytest

from normlab.exponents import INF
from normlab.interpolation import (
    InterpolationTriple,
    interpolate_bound,
    log_convexity_check,
    m_p,
    stationarity_residual,
)
from normlab.operators import op_norm_exact


class TestTriple:
    def test_schur_triple(self):
        tr = InterpolationTriple(1, INF, 0.5)
        assert tr.r.value == pytest.approx(2.0)

    def test_conjugate_relation(self):
        tr = InterpolationTriple(1.0, 4.0, 0.3)
        inv_r_conj = (
            tr.t * tr.p.conjugate().reciprocal
            + (1 - tr.t) * tr.q.conjugate().reciprocal
        )
        assert tr.r.conjugate().reciprocal == pytest.approx(inv_r_conj, abs=1e-14)

    def test_r_strictly_between(self):
        tr = InterpolationTriple(1.5, 3.0, 0.4)
        assert 1.5 < tr.r.value < 3.0

    def test_validation(self):
        with pytest.raises(ValueError):
            InterpolationTriple(2.0, 2.0, 0.5)
        with pytest.raises(ValueError):
            InterpolationTriple(1.0, 2.0, 1.0)


class TestMp:
    def test_diagonal_exact(self):
        d = np.diag([2.0, -3.0, 1.0])
        for p in (1.0, 2.0, INF):
            value, exact = m_p(d, p)
            assert exact
            assert value == pytest.approx(3.0, rel=1e-12)

    def test_all_ones_endpoints(self):
        t = np.ones((4, 4))
        assert m_p(t, 1)[0] == pytest.approx(4.0)
        assert m_p(t, INF)[0] == pytest.approx(4.0)

    def test_lower_bound_flagged(self):
        t = np.ones((3, 3))
        value, exact = m_p(t, 1.5, budget=2, seed=0)
        assert not exact
        assert value <= m_p(t, 1)[0] ** (2 / 3) * m_p(t, INF)[0] ** (1 / 3) + 1e-9

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(4)
        t = rng.standard_normal((8, 8))
        values = [m_p(t, 2.5, budget=b, seed=9)[0] for b in (1, 2, 4, 8)]
        for a, b in zip(values[:-1], values[1:]):
            assert a <= b + 1e-12


class TestLogConvexity:
    def test_interpolate_bound(self):
        tr = InterpolationTriple(2.0, 4.0, 0.5)
        assert interpolate_bound(3.0, 3.0, tr) == pytest.approx(3.0)
        assert interpolate_bound(4.0, 1.0, tr) == pytest.approx(2.0)
        with pytest.raises(ValueError):
            interpolate_bound(-1.0, 1.0, tr)

    def test_schur_case_via_triple(self):
        rng = np.random.default_rng(6)
        t = rng.standard_normal((6, 6))
        tr = InterpolationTriple(1, INF, 0.5)
        rep = log_convexity_check(t, [tr], budget=3, seed=1)[0]
        schur = op_norm_exact(t, 1) ** 0.5 * op_norm_exact(t, INF) ** 0.5
        assert rep.bound == pytest.approx(schur, rel=1e-12)
        assert rep.passed

    def test_diagonal_equality(self):
        d = np.diag([3.0, 1.0, 2.0])
        triples = [
            InterpolationTriple(1, INF, t) for t in (0.25, 0.5, 0.75)
        ] + [InterpolationTriple(1, 2, 0.5), InterpolationTriple(2, INF, 0.5)]
        for rep in log_convexity_check(d, triples, budget=3, seed=0):
            assert abs(rep.value_r - rep.bound) <= 1e-12 * max(rep.bound, 1.0)

    @pytest.mark.parametrize("complex_field", [False, True])
    def test_random_matrices_pass(self, complex_field):
        rng = np.random.default_rng(12 + complex_field)
        triples = [
            InterpolationTriple(1, INF, t) for t in (0.2, 0.4, 0.6, 0.8)
        ] + [
            InterpolationTriple(1, 2, t) for t in (0.3, 0.7)
        ] + [
            InterpolationTriple(2, INF, t) for t in (0.3, 0.7)
        ]
        for _ in range(25):
            n = int(rng.integers(2, 13))
            t = rng.standard_normal((n, n))
            if complex_field:
                t = t + 1j * rng.standard_normal((n, n))
            reports = log_convexity_check(t, triples, budget=2, seed=3)
            assert all(r.passed for r in reports)


class TestStationarity:
    def test_diagonal_extremal(self):
        rep = stationarity_residual(
            np.diag([2.0, 1.0]), np.array([1.0, 0.0]), np.array([1.0, 0.0]), 1.5
        )
        assert rep.mu == pytest.approx(2.0)
        assert rep.nu == pytest.approx(2.0)
        assert rep.mu_residual == 0.0
        assert rep.nu_residual == 0.0

    def test_identity_flat_vector(self):
        v = np.ones(4) / 2.0  # unit 2-norm, all moduli equal
        rep = stationarity_residual(np.eye(4), v, v, 2.0)
        assert rep.mu == pytest.approx(1.0)
        assert rep.nu == pytest.approx(1.0)
        assert rep.mu_residual <= 1e-14
        assert rep.nu_residual <= 1e-14

    def test_requires_normalization(self):
        with pytest.raises(ValueError):
            stationarity_residual(
                np.eye(2), np.array([2.0, 0.0]), np.array([1.0, 0.0]), 2.0
            )

    def test_requires_finite_r(self):
        v = np.array([1.0, 0.0])
        with pytest.raises(ValueError):
            stationarity_residual(np.eye(2), v, v, 1.0)

    def test_random_smoke(self):
        from normlab.core import p_norm
        from normlab.exponents import as_exponent

        rng = np.random.default_rng(3)
        for r in (1.5, 2.0, 3.0):
            q = as_exponent(r).conjugate()
            t = rng.standard_normal((5, 5))
            x = rng.standard_normal(5)
            y = rng.standard_normal(5)
            rep = stationarity_residual(
                t, x / p_norm(x, r), y / p_norm(y, q), r
            )
            assert rep.mu_residual >= 0.0
            assert rep.nu_residual >= 0.0
            assert np.isfinite([rep.mu, rep.nu]).all()
