import math

import pytest
from hypothesis import given, strategies as st

from normlab.exponents import INF, Exponent, as_exponent, conjugate_exponent


def test_endpoint_conjugates_exact():
    assert conjugate_exponent(1.0) == INF
    assert conjugate_exponent(INF) == Exponent(1.0)
    assert conjugate_exponent(2.0) == Exponent(2.0)


def test_four_thirds():
    q = conjugate_exponent(4.0)
    assert q.value == pytest.approx(4.0 / 3.0, rel=1e-15)


def test_reciprocal_convention():
    assert INF.reciprocal == 0.0
    assert Exponent(1.0).reciprocal == 1.0
    assert Exponent(4.0).reciprocal == 0.25


def test_validation():
    with pytest.raises(ValueError):
        Exponent(0.5)
    with pytest.raises(ValueError):
        Exponent(float("nan"))


def test_immutability_and_hash():
    p = Exponent(3.0)
    with pytest.raises(AttributeError):
        p.value = 4.0
    assert hash(Exponent(3.0)) == hash(p)
    assert as_exponent("inf") == INF
    assert as_exponent("2.5") == Exponent(2.5)


@given(st.floats(min_value=1.0 + 1e-12, max_value=1e12))
def test_conjugate_roundtrip(p):
    back = conjugate_exponent(conjugate_exponent(p))
    assert back.value == p


@given(st.floats(min_value=1.0, max_value=1e12) | st.just(math.inf))
def test_reciprocal_sum(p):
    p = as_exponent(p)
    q = p.conjugate()
    assert p.reciprocal + q.reciprocal == pytest.approx(1.0, abs=1e-14)
