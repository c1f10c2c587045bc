"""Finitely supported functions on arbitrary index sets.

The desk-scale stand-in for summable functions: unordered sums, lp norms,
epsilon-truncation of supports, Fubini for product keys, and finite-family
instantiations of the convergence theorems.  Keys are opaque orderable
tokens; ordering is used only to make results deterministic.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

import numpy as np

from normlab.core import p_norm
from normlab.exponents import as_exponent


class SparseFn:
    """A scalar function with finite support; zero entries are dropped."""

    __slots__ = ("_data",)

    def __init__(self, entries: Mapping | Iterable[tuple] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data = {}
        for key, value in items:
            if key in data:
                raise ValueError(f"duplicate key {key!r}")
            value = complex(value)
            if value.imag == 0:
                value = value.real
            if value != 0:
                data[key] = value
        self._data = data

    @property
    def support(self) -> list:
        return sorted(self._data)

    def __getitem__(self, key):
        return self._data.get(key, 0.0)

    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self):
        return iter(sorted(self._data))

    def items(self) -> list[tuple]:
        return [(k, self._data[k]) for k in sorted(self._data)]

    def values_array(self) -> np.ndarray:
        vals = [self._data[k] for k in sorted(self._data)]
        if any(isinstance(v, complex) for v in vals):
            return np.array(vals, dtype=np.complex128)
        return np.array(vals, dtype=np.float64) if vals else np.zeros(0)

    def restrict(self, keys) -> "SparseFn":
        keys = set(keys)
        return SparseFn({k: v for k, v in self._data.items() if k in keys})

    def __add__(self, other: "SparseFn") -> "SparseFn":
        keys = set(self._data) | set(other._data)
        return SparseFn({k: self[k] + other[k] for k in keys})

    def __mul__(self, scalar) -> "SparseFn":
        return SparseFn({k: scalar * v for k, v in self._data.items()})

    __rmul__ = __mul__

    def pointwise(self, other: "SparseFn") -> "SparseFn":
        keys = set(self._data) & set(other._data)
        return SparseFn({k: self[k] * other[k] for k in keys})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseFn):
            return NotImplemented
        return self._data == other._data

    def __repr__(self) -> str:
        return f"SparseFn({self.items()!r})"

    # -- serialization: sorted key=value lines ------------------------

    def serialize(self) -> str:
        lines = []
        for k, v in self.items():
            if isinstance(v, complex):
                vtxt = f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}i"
            else:
                vtxt = repr(v)
            lines.append(f"{k}={vtxt}")
        return "\n".join(lines)


def delta(key) -> SparseFn:
    """The unit mass at a single key."""
    return SparseFn({key: 1.0})


def unordered_sum(f: SparseFn):
    """Sum of the values, accumulated in sorted key order for determinism."""
    total = 0
    for _, v in f.items():
        total = total + v
    return total


def lp_norm_seq(f: SparseFn, p) -> float:
    """lp norm over the support; accepts 0 < p < 1 as a quasinorm too."""
    vals = f.values_array()
    if vals.size == 0:
        return 0.0
    if isinstance(p, (int, float)) and not isinstance(p, bool) and 0 < p < 1:
        return float(np.sum(np.abs(vals) ** p) ** (1.0 / p))
    return p_norm(vals, as_exponent(p))


def truncate(f: SparseFn, eps: float) -> tuple[set, float]:
    """Greedy smallest key set A with sum of |f| outside A at most eps.

    Keys enter by decreasing modulus (ties broken by key order); returns
    (A, tail) with tail the exact remaining absolute mass.
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    order = sorted(f.items(), key=lambda kv: (-abs(kv[1]), str(kv[0])))
    total = sum(abs(v) for _, v in order)
    chosen: set = set()
    tail = total
    for key, value in order:
        if tail <= eps:
            break
        chosen.add(key)
        tail -= abs(value)
    return chosen, float(tail)


class FubiniReport(NamedTuple):
    double: complex | float
    iterated_xy: complex | float
    iterated_yx: complex | float


def fubini_check(f: SparseFn) -> FubiniReport:
    """The three sums of a function on product keys (x, y).

    All keys must be 2-tuples.  Returns the unordered double sum and both
    iterated sums; for finite support they agree exactly up to rounding.
    """
    for key in f.support:
        if not (isinstance(key, tuple) and len(key) == 2):
            raise ValueError(f"key {key!r} is not a product key (x, y)")
    double = unordered_sum(f)

    def iterate(axis: int):
        outer: dict = {}
        for (x, y), v in f.items():
            first = x if axis == 0 else y
            outer.setdefault(first, []).append(v)
        total = 0
        for first in sorted(outer, key=str):
            inner = 0
            for v in outer[first]:
                inner = inner + v
            total = total + inner
        return total

    return FubiniReport(double, iterate(0), iterate(1))


class ConvergenceReport(NamedTuple):
    mode: str
    precondition_ok: bool
    detail: str
    passed: bool
    gaps: tuple[float, ...]


def _common_keys(family: list[SparseFn], limit: SparseFn) -> list:
    keys = set(limit.support)
    for f in family:
        keys |= set(f.support)
    return sorted(keys)


def convergence_check(
    mode: str,
    family: list[SparseFn],
    limit: SparseFn,
    dominator: SparseFn | None = None,
) -> ConvergenceReport:
    """Finite-family instantiation of the convergence theorems.

    monotone: requires a nondecreasing nonnegative family below the limit;
    passes when the sums increase toward the limit sum.  fatou: checks
    sum of (pointwise running minima) <= min of sums.  dominated: requires
    |f_j| <= dominator pointwise (a missing dominator is a precondition
    failure); passes when the tail bounds sum |f_j - limit| are
    nonincreasing along the family.
    """
    if not family:
        raise ValueError("family must be nonempty")
    keys = _common_keys(family, limit)

    if mode == "monotone":
        for f in family:
            if any(not isinstance(f[k], float) or f[k] < 0 for k in keys):
                return ConvergenceReport(
                    mode, False, "family must be nonnegative real", False, ()
                )
        for a, b in zip(family[:-1], family[1:]):
            if any(a[k] > b[k] + 1e-15 for k in keys):
                return ConvergenceReport(
                    mode, False, "family is not pointwise nondecreasing", False, ()
                )
        if any(family[-1][k] > limit[k] + 1e-15 for k in keys):
            return ConvergenceReport(
                mode, False, "family exceeds the limit", False, ()
            )
        sums = [unordered_sum(f) for f in family]
        target = unordered_sum(limit)
        gaps = tuple(float(target - s) for s in sums)
        increasing = all(
            s1 <= s2 + 1e-12 for s1, s2 in zip(sums[:-1], sums[1:])
        )
        shrinking = all(
            g1 >= g2 - 1e-12 for g1, g2 in zip(gaps[:-1], gaps[1:])
        )
        return ConvergenceReport(
            mode, True, "sums increase toward the limit sum",
            increasing and shrinking and gaps[-1] >= -1e-12, gaps,
        )

    if mode == "fatou":
        for f in family:
            if any(not isinstance(f[k], float) or f[k] < 0 for k in keys):
                return ConvergenceReport(
                    mode, False, "family must be nonnegative real", False, ()
                )
        liminf_vals = {k: min(f[k] for f in family) for k in keys}
        lhs = sum(liminf_vals.values())
        rhs = min(unordered_sum(f) for f in family)
        return ConvergenceReport(
            mode, True, f"sum of running minima {lhs} <= min of sums {rhs}",
            lhs <= rhs + 1e-12, (float(rhs - lhs),),
        )

    if mode == "dominated":
        if dominator is None:
            return ConvergenceReport(
                mode, False, "no dominator supplied", False, ()
            )
        for f in family:
            if any(abs(f[k]) > abs(dominator[k]) + 1e-15 for k in keys):
                return ConvergenceReport(
                    mode, False, "family is not dominated pointwise", False, ()
                )
        tails = tuple(
            float(sum(abs(f[k] - limit[k]) for k in keys)) for f in family
        )
        nonincreasing = all(
            t1 >= t2 - 1e-12 for t1, t2 in zip(tails[:-1], tails[1:])
        )
        return ConvergenceReport(
            mode, True, "tail bounds nonincreasing", nonincreasing, tails
        )

    raise ValueError(f"unknown mode {mode!r}")
