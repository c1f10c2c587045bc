"""Dyadic analysis on [0,1): intervals, step functions, conditional
expectations, maximal and square functions, Haar/Rademacher/Walsh systems,
stopping-time decompositions, and distribution-function calculus.

A step function of level l is determined by its values on the 2^l dyadic
cells; every integral below is the exact finite sum 2^(-l) * sum(values),
so no quadrature error enters any constant check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from normlab import _kernels
from normlab.exponents import as_exponent

MAX_LEVEL = 14


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """The interval [index * 2^-level, (index+1) * 2^-level)."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be >= 0")
        if not 0 <= self.index < (1 << self.level):
            raise ValueError("index out of range for level")

    @property
    def length(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    @property
    def left_endpoint(self) -> Fraction:
        return Fraction(self.index, 1 << self.level)

    def halves(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        return (
            DyadicInterval(self.level + 1, 2 * self.index),
            DyadicInterval(self.level + 1, 2 * self.index + 1),
        )

    def parent(self) -> "DyadicInterval":
        if self.level == 0:
            raise ValueError("[0,1) has no parent")
        return DyadicInterval(self.level - 1, self.index // 2)

    def contains(self, other: "DyadicInterval") -> bool:
        if other.level < self.level:
            return False
        return other.index >> (other.level - self.level) == self.index

    def disjoint(self, other: "DyadicInterval") -> bool:
        return not (self.contains(other) or other.contains(self))


class DyadicStepFunction:
    """A function on [0,1) constant on the 2^level dyadic cells."""

    __slots__ = ("level", "values")

    def __init__(self, level: int, values):
        if not 0 <= level <= MAX_LEVEL:
            raise ValueError(f"level must lie in [0, {MAX_LEVEL}]")
        arr = np.asarray(values)
        if arr.shape != (1 << level,):
            raise ValueError(f"need 2^{level} values, got shape {arr.shape}")
        if np.iscomplexobj(arr):
            arr = arr.astype(np.complex128)
        else:
            arr = arr.astype(np.float64)
        self.level = level
        self.values = arr
        self.values.flags.writeable = False

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, level: int = 0) -> "DyadicStepFunction":
        return cls(level, np.full(1 << level, c))

    @classmethod
    def indicator(cls, interval: DyadicInterval) -> "DyadicStepFunction":
        vals = np.zeros(1 << interval.level)
        vals[interval.index] = 1.0
        return cls(interval.level, vals)

    # -- structure ----------------------------------------------------

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def refine(self, level: int) -> "DyadicStepFunction":
        """The same function represented on a finer grid."""
        if level < self.level:
            raise ValueError("refine only increases the level")
        if level == self.level:
            return self
        reps = 1 << (level - self.level)
        return DyadicStepFunction(level, np.repeat(self.values, reps))

    @staticmethod
    def common_level(*fs: "DyadicStepFunction") -> int:
        return max(f.level for f in fs)

    def _binary(self, other, op) -> "DyadicStepFunction":
        if isinstance(other, DyadicStepFunction):
            lvl = max(self.level, other.level)
            return DyadicStepFunction(
                lvl, op(self.refine(lvl).values, other.refine(lvl).values)
            )
        return DyadicStepFunction(self.level, op(self.values, other))

    def __add__(self, other):
        return self._binary(other, np.add)

    def __radd__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    def __rmul__(self, other):
        return self._binary(other, np.multiply)

    def __abs__(self) -> "DyadicStepFunction":
        return DyadicStepFunction(self.level, np.abs(self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicStepFunction):
            return NotImplemented
        lvl = max(self.level, other.level)
        return bool(
            np.array_equal(self.refine(lvl).values, other.refine(lvl).values)
        )

    def __hash__(self):  # pragma: no cover - mutable content, not hashable
        raise TypeError("DyadicStepFunction is not hashable")

    # -- integration --------------------------------------------------

    def integral(self):
        """Exact integral over [0,1): 2^(-level) times the value sum."""
        s = self.values.mean()
        return complex(s) if self.is_complex else float(s)

    def lp_norm(self, p) -> float:
        """(integral |f|^p)^(1/p); p may be any positive real or inf."""
        a = np.abs(self.values)
        if isinstance(p, str) or hasattr(p, "is_inf"):
            p = as_exponent(p)
            if p.is_inf:
                return float(a.max())
            p = p.value
        p = float(p)
        if p <= 0:
            raise ValueError("p must be positive")
        if np.isinf(p):
            return float(a.max())
        return float(np.mean(a**p) ** (1.0 / p))

    # -- serialization ------------------------------------------------

    def serialize(self) -> str:
        """Text form ``level;v0,v1,...`` with complex values as re+imi."""
        if self.is_complex:
            parts = [
                f"{float(z.real)!r}"
                f"{'+' if z.imag >= 0 else '-'}{abs(float(z.imag))!r}i"
                for z in self.values
            ]
        else:
            parts = [repr(float(x)) for x in self.values]
        return f"{self.level};{','.join(parts)}"

    @staticmethod
    def _parse_complex(item: str) -> complex:
        body = item.strip().removesuffix("i")
        # The imaginary part starts at the last sign that is neither leading
        # nor part of an exponent.
        idx = max(body.rfind("+", 1), body.rfind("-", 1))
        while idx > 0 and body[idx - 1] in "eE":
            idx = max(body.rfind("+", 1, idx - 1), body.rfind("-", 1, idx - 1))
        return complex(float(body[:idx]), float(body[idx:]))

    @classmethod
    def deserialize(cls, text: str) -> "DyadicStepFunction":
        head, _, body = text.partition(";")
        level = int(head)
        items = body.split(",")
        if any("i" in item for item in items):
            vals = np.array(
                [cls._parse_complex(item) for item in items], dtype=np.complex128
            )
            return cls(level, vals)
        return cls(level, np.array([float(x) for x in items]))

    def __repr__(self) -> str:
        return f"DyadicStepFunction(level={self.level}, values={self.values!r})"


# -- conditional expectations and the ladder ---------------------------


def expectation(f: DyadicStepFunction, k: int) -> DyadicStepFunction:
    """E_k(f): the average of f over the level-k dyadic cells.

    For k >= level(f) this is f itself; the result is represented at
    level(f) but is constant on the level-k cells.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k >= f.level:
        return f
    block = 1 << (f.level - k)
    means = f.values.reshape(-1, block).mean(axis=1)
    return DyadicStepFunction(f.level, np.repeat(means, block))


def expectation_ladder(f: DyadicStepFunction) -> np.ndarray:
    """Array of shape (level+1, 2^level) with row k equal to E_k(f)."""
    return _kernels.expectation_ladder(f.values)


def maximal_function(f: DyadicStepFunction) -> DyadicStepFunction:
    """Pointwise supremum over k of |E_k(f)|; finite for step functions."""
    ladder = expectation_ladder(f)
    return DyadicStepFunction(f.level, np.abs(ladder).max(axis=0))


def square_function(f: DyadicStepFunction) -> DyadicStepFunction:
    """(|E_0 f|^2 + sum_j |E_j f - E_{j-1} f|^2)^(1/2), pointwise."""
    ladder = expectation_ladder(f)
    total = np.abs(ladder[0]) ** 2
    if ladder.shape[0] > 1:
        total = total + (np.abs(np.diff(ladder, axis=0)) ** 2).sum(axis=0)
    return DyadicStepFunction(f.level, np.sqrt(total))


def maximal_linearization(f: DyadicStepFunction):
    """Argmax-selector linearization of the maximal function at f.

    Returns (selector, apply) where selector[x] is the level whose
    expectation attains M(f) at cell x, and apply(h) evaluates the linear
    operator h -> E_{selector(x)}(h)(x).  Pointwise |apply(h)| <= M(h) for
    every h, with |apply(f)| = M(f).
    """
    ladder = expectation_ladder(f)
    selector = np.abs(ladder).argmax(axis=0)

    def apply(h: DyadicStepFunction) -> DyadicStepFunction:
        h = h.refine(f.level)
        lad_h = expectation_ladder(h)
        vals = lad_h[selector, np.arange(lad_h.shape[1])]
        return DyadicStepFunction(f.level, vals)

    return selector, apply


# -- Haar system --------------------------------------------------------


class HaarCoefficients(NamedTuple):
    """Constant coefficient plus one coefficient per dyadic interval.

    ``by_interval`` maps each interval I with |I| >= 2^(1-level) to the
    inner product of f with the Haar function on I (negative on the left
    half, positive on the right).
    """

    constant: complex | float
    by_interval: dict[DyadicInterval, complex | float]
    level: int


def haar_transform(f: DyadicStepFunction) -> HaarCoefficients:
    flat = _kernels.haar_forward(f.values)
    by_interval: dict[DyadicInterval, complex | float] = {}
    caster = complex if f.is_complex else float
    for k in range(f.level):
        for i in range(1 << k):
            by_interval[DyadicInterval(k, i)] = caster(flat[(1 << k) + i])
    return HaarCoefficients(caster(flat[0]), by_interval, f.level)


def haar_reconstruct(coeffs: HaarCoefficients) -> DyadicStepFunction:
    n = 1 << coeffs.level
    some_complex = isinstance(coeffs.constant, complex) or any(
        isinstance(v, complex) for v in coeffs.by_interval.values()
    )
    flat = np.zeros(n, dtype=np.complex128 if some_complex else np.float64)
    flat[0] = coeffs.constant
    for interval, c in coeffs.by_interval.items():
        if interval.level >= coeffs.level:
            raise ValueError("coefficient interval finer than the level allows")
        flat[(1 << interval.level) + interval.index] = c
    return DyadicStepFunction(coeffs.level, _kernels.haar_inverse(flat))


def haar_function(interval: DyadicInterval, level: int) -> DyadicStepFunction:
    """The orthonormal Haar function of an interval, at representation level."""
    if level <= interval.level:
        raise ValueError("need level > interval.level to represent the halves")
    left, right = interval.halves()
    scale = float(np.sqrt(1 << interval.level))
    f = DyadicStepFunction.indicator(right) - DyadicStepFunction.indicator(left)
    return (scale * f).refine(level)


# -- distribution functions and layer cake ------------------------------


def distribution_measure(g: DyadicStepFunction, lam: float) -> float:
    """Exact Lebesgue measure of {x : g(x) > lam} for real-valued g."""
    if g.is_complex:
        raise ValueError("distribution function needs a real-valued function")
    return float(np.mean(g.values > lam))


def layer_cake(g: DyadicStepFunction, p: float) -> tuple[float, float]:
    """(direct, layered) evaluations of the p-th power integral.

    ``direct`` integrates g^p cell by cell; ``layered`` evaluates the
    distribution-function integral int_0^inf p lam^(p-1) |{g > lam}| d lam
    in closed form between consecutive distinct values.  Both are exact.
    """
    if g.is_complex:
        raise ValueError("layer cake needs a real-valued function")
    if p <= 0:
        raise ValueError("p must be positive")
    vals = g.values
    if np.any(vals < 0):
        raise ValueError("layer cake needs nonnegative values")
    n = vals.size
    direct = float(np.mean(vals**p))
    thresholds = np.unique(np.concatenate([[0.0], vals]))
    sorted_vals = np.sort(vals)
    # |{g > t_i}| is constant between consecutive distinct values, so the
    # lambda-integral is a finite sum of exact power increments.
    counts = n - np.searchsorted(sorted_vals, thresholds[:-1], side="right")
    increments = thresholds[1:] ** p - thresholds[:-1] ** p
    layered = float(np.sum(counts / n * increments))
    return direct, layered


# -- stopping-time decompositions ---------------------------------------


@dataclass(frozen=True)
class StoppingDecomposition:
    """Replacement of f by its averages where a threshold is exceeded.

    ``maximal_intervals`` is the disjoint family of maximal intervals where
    the thresholded quantity exceeds ``threshold``; ``halved_parents`` the
    maximal doubled-length parents, on which ``replaced`` carries the
    average of f.  ``degenerate`` marks the branch where [0,1) itself
    exceeds the threshold and no replacement happens.
    """

    maximal_intervals: tuple[DyadicInterval, ...]
    halved_parents: tuple[DyadicInterval, ...]
    replaced: DyadicStepFunction
    threshold: float
    mode: str
    degenerate: bool = False


def _maximal_members(intervals: Iterable[DyadicInterval]) -> list[DyadicInterval]:
    """Maximal elements of a family: those contained in no other member.

    Walks coarse-to-fine; a candidate is dominated iff one of its ancestors
    was already chosen, which costs one set lookup per ancestor level.
    """
    chosen: list[DyadicInterval] = []
    chosen_keys: set[tuple[int, int]] = set()
    for cand in sorted(intervals, key=lambda i: (i.level, i.index)):
        dominated = False
        level, index = cand.level, cand.index
        for up in range(level + 1):
            if (level - up, index >> up) in chosen_keys:
                dominated = True
                break
        if not dominated:
            chosen.append(cand)
            chosen_keys.add((cand.level, cand.index))
    return chosen


def _cells_under(intervals, level: int) -> np.ndarray:
    mask = np.zeros(1 << level, dtype=bool)
    for interval in intervals:
        width = 1 << (level - interval.level)
        mask[interval.index * width : (interval.index + 1) * width] = True
    return mask


def _replace_by_averages(
    f: DyadicStepFunction, parents: list[DyadicInterval]
) -> DyadicStepFunction:
    vals = f.values.copy()
    for interval in parents:
        width = 1 << (f.level - interval.level)
        sl = slice(interval.index * width, (interval.index + 1) * width)
        vals[sl] = vals[sl].mean()
    return DyadicStepFunction(f.level, vals)


def stopping_decompose(
    f: DyadicStepFunction, lam: float, mode: str = "average-threshold"
) -> StoppingDecomposition:
    """Stopping-time decomposition at threshold lam.

    ``average-threshold``: stop on dyadic J where |average of f| > lam.
    The replaced function agrees with f outside the maximal doubled
    parents and equals the average of f on each of them; it satisfies
    |f_lam| <= min(lam, M(f)) pointwise.

    ``square-threshold``: stop on the maximal dyadic intervals inside
    {S(f) > lam}; the replaced function satisfies S(g_lam) <= min(lam, S(f)).

    When [0,1) itself is selected the decomposition is degenerate: no
    parents exist and the function is returned unchanged.
    """
    if lam <= 0:
        raise ValueError("threshold must be positive")
    if mode == "average-threshold":
        ladder = expectation_ladder(f)
        # Per level, the cells whose average exceeds the threshold; an
        # interval is maximal iff no ancestor also exceeds, tracked by a
        # blocked mask pushed down the levels.
        exceeded = []
        blocked = np.zeros(1, dtype=bool)
        for k in range(f.level + 1):
            width = 1 << (f.level - k)
            over = np.abs(ladder[k][::width]) > lam
            for i in np.nonzero(over & ~blocked)[0]:
                exceeded.append(DyadicInterval(k, int(i)))
            if k < f.level:
                blocked = np.repeat(blocked | over, 2)
        maximal = exceeded
        if not exceeded:
            return StoppingDecomposition((), (), f, lam, mode)
        if maximal[0].level == 0:
            return StoppingDecomposition(
                tuple(maximal), (), f, lam, mode, degenerate=True
            )
        parents = _maximal_members({i.parent() for i in maximal})
        replaced = _replace_by_averages(f, parents)
        return StoppingDecomposition(
            tuple(maximal), tuple(parents), replaced, lam, mode
        )
    if mode == "square-threshold":
        s_vals = square_function(f).values
        mask = s_vals > lam
        maximal = _maximal_cells_of_mask(mask, f.level)
        if not maximal:
            return StoppingDecomposition((), (), f, lam, mode)
        if maximal[0].level == 0:
            return StoppingDecomposition(
                tuple(maximal), (), f, lam, mode, degenerate=True
            )
        parents = _maximal_members({i.parent() for i in maximal})
        replaced = _replace_by_averages(f, parents)
        return StoppingDecomposition(
            tuple(maximal), tuple(parents), replaced, lam, mode
        )
    raise ValueError(f"unknown mode {mode!r}")


def _maximal_cells_of_mask(mask: np.ndarray, level: int) -> list[DyadicInterval]:
    """Maximal dyadic intervals entirely contained in the masked set."""
    out: list[DyadicInterval] = []

    def descend(k: int, i: int) -> None:
        width = 1 << (level - k)
        chunk = mask[i * width : (i + 1) * width]
        if chunk.all():
            out.append(DyadicInterval(k, i))
            return
        if not chunk.any() or k == level:
            return
        descend(k + 1, 2 * i)
        descend(k + 1, 2 * i + 1)

    descend(0, 0)
    return out


def superlevel_cells(g: DyadicStepFunction, lam: float) -> list[DyadicInterval]:
    """Maximal dyadic intervals filling {g > lam} exactly."""
    if g.is_complex:
        raise ValueError("superlevel set needs a real-valued function")
    return _maximal_cells_of_mask(g.values > lam, g.level)


# -- Rademacher and Walsh systems ---------------------------------------


def rademacher(j: int, level: int) -> DyadicStepFunction:
    """r_j: alternates +1, -1 on the level-j cells; needs 1 <= j <= level."""
    if not 1 <= j <= level:
        raise ValueError("need 1 <= j <= level")
    signs = np.where(np.arange(1 << j) % 2 == 0, 1.0, -1.0)
    return DyadicStepFunction(j, signs).refine(level)


def walsh(indices, level: int) -> DyadicStepFunction:
    """w_A: the product of r_j over j in A; the empty set gives 1."""
    idx = sorted(set(int(j) for j in indices))
    if idx and (idx[0] < 1 or idx[-1] > level):
        raise ValueError("walsh indices must lie in [1, level]")
    out = DyadicStepFunction.constant(1.0, level)
    for j in idx:
        out = out * rademacher(j, level)
    return out


class KhintchineRow(NamedTuple):
    p: float
    lp_norm: float


class KhintchineReport(NamedTuple):
    sigma: float
    rows: tuple[KhintchineRow, ...]
    fourth_moment: float
    fourth_moment_identity: float
    max_value: float
    coeff_abs_sum: float


def khintchine_report(a, p_grid) -> KhintchineReport:
    """Norm table for f = sum a_j r_j against sigma = (sum a_j^2)^(1/2).

    Also reports the exact fourth moment, its closed form
    3 sigma^4 - 2 sum a_j^4, and max |f| = sum |a_j|.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("need a nonempty 1-d coefficient vector")
    n = a.size
    f = DyadicStepFunction.constant(0.0, n)
    for j in range(n):
        f = f + a[j] * rademacher(j + 1, n)
    sigma = float(np.sqrt(np.sum(a**2)))
    rows = tuple(KhintchineRow(float(p), f.lp_norm(float(p))) for p in p_grid)
    fourth = f.lp_norm(4.0) ** 4
    identity = 3.0 * sigma**4 - 2.0 * float(np.sum(a**4))
    return KhintchineReport(
        sigma=sigma,
        rows=rows,
        fourth_moment=float(fourth),
        fourth_moment_identity=float(identity),
        max_value=float(np.abs(f.values).max()),
        coeff_abs_sum=float(np.abs(a).sum()),
    )


# -- tail square sums (the p = 4 route) ---------------------------------


class TailSquareReport(NamedTuple):
    cell_identity_residual: float
    fourth_power_integral: float
    mixed_integral: float
    empirical_constant: float


def tail_square_report(f: DyadicStepFunction) -> TailSquareReport:
    """Cell-level tail identity and the fourth-power comparison.

    For each j <= level and each level-j cell I the identity
    int_I (|E_j f|^2 + R_{j+1} f^2) = int_I |f|^2 holds exactly, where
    R_j aggregates the martingale differences from level j on.  The report
    returns the worst residual, scaled, plus the two integrals of the
    fourth-power comparison int S(f)^4 <= C int S(f)^2 M(|f|^2) and their
    empirical ratio.
    """
    ladder = expectation_ladder(f)
    level = f.level
    n = 1 << level
    diffs_sq = np.abs(np.diff(ladder, axis=0)) ** 2 if level else np.zeros((0, n))
    # tail_sq[j] = sum_{k >= j, k <= level} |E_k - E_{k-1}|^2 for j >= 1
    tail_sq = np.zeros((level + 2, n))
    for j in range(level, 0, -1):
        tail_sq[j] = tail_sq[j + 1] + diffs_sq[j - 1]

    scale = max(float(np.abs(f.values).max()) ** 2, np.finfo(float).tiny)
    worst = 0.0
    f_sq = np.abs(f.values) ** 2
    for j in range(level + 1):
        width = 1 << (level - j)
        lhs_cells = (np.abs(ladder[j]) ** 2 + tail_sq[j + 1]).reshape(-1, width)
        rhs_cells = f_sq.reshape(-1, width)
        gap = np.abs(lhs_cells.mean(axis=1) - rhs_cells.mean(axis=1)).max()
        worst = max(worst, float(gap))

    s = square_function(f)
    m_fsq = maximal_function(DyadicStepFunction(level, f_sq))
    fourth = float(np.mean(s.values**4))
    mixed = float(np.mean(s.values**2 * m_fsq.values))
    const = fourth / mixed if mixed > 0 else 0.0
    return TailSquareReport(worst / scale, fourth, mixed, const)
