import numpy as np
import pytest

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


class TestSparseFn:
    def test_zero_values_dropped(self):
        f = SparseFn({"a": 0.0, "b": 1.0})
        assert f.support == ["b"]

    def test_duplicate_keys_rejected(self):
        with pytest.raises(ValueError):
            SparseFn([("a", 1.0), ("a", 2.0)])

    def test_real_coercion(self):
        f = SparseFn({"a": complex(2.0, 0.0)})
        assert isinstance(f["a"], float)

    def test_serialize_sorted_lines(self):
        f = SparseFn({"b": 2.0, "a": 1.0})
        assert f.serialize().splitlines() == ["a=1.0", "b=2.0"]


class TestSums:
    def test_empty(self):
        assert unordered_sum(SparseFn()) == 0

    def test_delta(self):
        assert unordered_sum(delta("z")) == 1.0

    def test_mixed_signs(self):
        f = SparseFn({"a": 1.0, "b": -1.0, "c": 2.0})
        assert unordered_sum(f) == 2.0

    def test_delta_norm_any_p(self):
        for p in (1.0, 2.0, 3.5, float("inf")):
            assert lp_norm_seq(delta("z"), p) == 1.0

    def test_norm_monotone(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            f = SparseFn(
                {f"k{i}": v for i, v in enumerate(rng.uniform(-1, 1, 8))}
            )
            assert lp_norm_seq(f, 3.0) <= lp_norm_seq(f, 2.0) + 1e-12
            assert lp_norm_seq(f, float("inf")) <= lp_norm_seq(f, 1.5) + 1e-12

    def test_quasinorm_range(self):
        f = SparseFn({"a": 1.0, "b": 1.0})
        assert lp_norm_seq(f, 0.5) == pytest.approx(4.0)


class TestTruncate:
    def test_eps_above_total(self):
        f = SparseFn({"a": 1.0, "b": 2.0})
        chosen, tail = truncate(f, 10.0)
        assert chosen == set() and tail == 3.0

    def test_eps_zero(self):
        f = SparseFn({"a": 1.0, "b": 2.0})
        chosen, tail = truncate(f, 0.0)
        assert chosen == {"a", "b"} and tail == 0.0

    def test_greedy_takes_largest(self):
        f = SparseFn({"x": 0.5, "y": 0.3, "z": 0.2})
        chosen, tail = truncate(f, 0.25)
        assert chosen == {"x", "y"}
        assert tail == pytest.approx(0.2)

    def test_negative_eps(self):
        with pytest.raises(ValueError):
            truncate(SparseFn({"a": 1.0}), -0.1)


class TestFubini:
    def test_single_entry(self):
        f = SparseFn({("x", "y"): 3.0})
        rep = fubini_check(f)
        assert rep.double == rep.iterated_xy == rep.iterated_yx == 3.0

    def test_rank_one_product(self):
        a = {"x0": 1.0, "x1": 2.0}
        b = {"y0": -1.0, "y1": 3.0}
        f = SparseFn({(kx, ky): va * vb for kx, va in a.items() for ky, vb in b.items()})
        rep = fubini_check(f)
        expected = sum(a.values()) * sum(b.values())
        assert rep.double == pytest.approx(expected)
        assert rep.iterated_xy == pytest.approx(expected)
        assert rep.iterated_yx == pytest.approx(expected)

    def test_random_grid(self):
        rng = np.random.default_rng(1)
        f = SparseFn(
            {
                (f"x{i}", f"y{j}"): complex(*rng.uniform(-1, 1, 2))
                for i in range(5)
                for j in range(5)
            }
        )
        rep = fubini_check(f)
        assert abs(rep.double - rep.iterated_xy) <= 1e-13
        assert abs(rep.double - rep.iterated_yx) <= 1e-13

    def test_bad_keys(self):
        with pytest.raises(ValueError):
            fubini_check(SparseFn({"flat": 1.0}))


class TestConvergence:
    def test_constant_family_all_modes(self):
        f = SparseFn({"a": 1.0, "b": 0.5})
        family = [f, f, f]
        for mode in ("monotone", "fatou"):
            rep = convergence_check(mode, family, f)
            assert rep.precondition_ok and rep.passed
        rep = convergence_check("dominated", family, f, dominator=f)
        assert rep.precondition_ok and rep.passed

    def test_increasing_family(self):
        base = SparseFn({"a": 1.0, "b": 2.0})
        family = [(1 - 2.0**-j) * base for j in range(1, 6)]
        rep = convergence_check("monotone", family, base)
        assert rep.passed
        assert rep.gaps[0] > rep.gaps[-1] >= 0

    def test_escaping_mass(self):
        family = [delta(j) for j in range(5)]
        rep = convergence_check("fatou", family, SparseFn())
        assert rep.passed  # 0 <= 1, strictly
        rep = convergence_check("dominated", family, SparseFn())
        assert not rep.precondition_ok

    def test_not_monotone_reported(self):
        up = SparseFn({"a": 1.0})
        down = SparseFn({"a": 0.5})
        rep = convergence_check("monotone", [up, down], up)
        assert not rep.precondition_ok

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            convergence_check("bogus", [delta("a")], delta("a"))


class TestHolderDuality:
    def test_pairing_bound(self):
        rng = np.random.default_rng(2)
        for p in (1.5, 2.0, 3.0):
            q = conjugate_exponent(p)
            for _ in range(50):
                keys = [f"k{i}" for i in range(6)]
                f = SparseFn(dict(zip(keys, rng.uniform(-1, 1, 6))))
                g = SparseFn(dict(zip(keys, rng.uniform(-1, 1, 6))))
                lhs = sum(abs(v) for _, v in f.pointwise(g).items())
                rhs = lp_norm_seq(f, p) * lp_norm_seq(g, q)
                assert lhs <= rhs + 1e-12 * max(rhs, 1.0)

    def test_dual_attainment_via_extremizer(self):
        rng = np.random.default_rng(3)
        for p in (1.5, 2.0, 4.0):
            q = conjugate_exponent(p)
            keys = [f"k{i}" for i in range(5)]
            g = SparseFn(dict(zip(keys, rng.uniform(-1, 1, 5))))
            f = SparseFn(dict(zip(keys, dual_extremizer(g.values_array(), p))))
            lhs = abs(unordered_sum(f.pointwise(g)))
            rhs = lp_norm_seq(g, q) * lp_norm_seq(f, p)
            assert lhs == pytest.approx(rhs, rel=1e-11)

    def test_small_p_route(self):
        rng = np.random.default_rng(4)
        for p in (0.25, 0.5, 0.75):
            for _ in range(30):
                keys = [f"k{i}" for i in range(6)]
                f = SparseFn(dict(zip(keys, rng.uniform(-1, 1, 6))))
                g = SparseFn(dict(zip(keys, rng.uniform(-1, 1, 6))))
                assert lp_norm_seq(f, 1.0) <= lp_norm_seq(f, p) + 1e-12
                lhs = abs(unordered_sum(f.pointwise(g)))
                rhs = lp_norm_seq(g, float("inf")) * lp_norm_seq(f, p)
                assert lhs <= rhs + 1e-12 * max(rhs, 1.0)
