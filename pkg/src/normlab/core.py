"""Vectors, p-norms, pairings, inner products, and the convexity toolkit.

Vectors are 1-d numpy arrays, real (float64) or complex (complex128); the
scalar field of a computation is whichever the inputs carry.  All functions
are pure and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from normlab.errors import NonConvexError
from normlab.exponents import as_exponent


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("vector must be 1-d and nonempty")
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128, copy=False)
    return arr.astype(np.float64, copy=False)


def _check_same_dim(v: np.ndarray, w: np.ndarray) -> None:
    if v.shape[0] != w.shape[0]:
        raise ValueError(f"dimension mismatch: {v.shape[0]} vs {w.shape[0]}")


def p_norm(v, p) -> float:
    """(sum |v_j|^p)^(1/p) for finite p, max |v_j| for p = inf.

    Finite p factors out the largest modulus before powering, so the result
    neither overflows nor underflows for any representable input.
    """
    v = as_vector(v)
    p = as_exponent(p)
    a = np.abs(v)
    m = float(a.max())
    if p.is_inf or m == 0.0:
        return m
    if p.value == 1.0:
        return float(a.sum())
    return m * float(np.sum((a / m) ** p.value)) ** (1.0 / p.value)


def pairing(v, w):
    """Duality pairing sum_j w_j v_j; no conjugation on either side."""
    v = as_vector(v)
    w = as_vector(w)
    _check_same_dim(v, w)
    s = np.sum(v * w)
    return complex(s) if np.iscomplexobj(s) else float(s)


def inner_product(v, w):
    """Standard inner product: sum v_j * conj(w_j); real case has no conjugate."""
    v = as_vector(v)
    w = as_vector(w)
    _check_same_dim(v, w)
    if np.iscomplexobj(v) or np.iscomplexobj(w):
        return complex(np.sum(np.asarray(v, complex) * np.conj(w)))
    return float(np.sum(v * w))


def polarize(norm_sq, v, w, field: str = "real"):
    """Reconstruct the inner product of v and w from a squared norm.

    ``norm_sq`` must be the squared norm of an inner product space over the
    given field.  Real: 4<v,w> = |v+w|^2 - |v-w|^2.  Complex adds the two
    imaginary terms i|v+iw|^2 - i|v-iw|^2.
    """
    v = as_vector(v)
    w = as_vector(w)
    _check_same_dim(v, w)
    plus = norm_sq(v + w)
    minus = norm_sq(v - w)
    if field == "real":
        return (plus - minus) / 4.0
    if field == "complex":
        v = v.astype(np.complex128)
        w = w.astype(np.complex128)
        ip = norm_sq(v + 1j * w)
        im = norm_sq(v - 1j * w)
        return (plus - minus + 1j * ip - 1j * im) / 4.0
    raise ValueError(f"field must be 'real' or 'complex', got {field!r}")


def euclidean_norm_sq(v) -> float:
    """Squared Euclidean norm; the canonical ``norm_sq`` for polarize."""
    v = as_vector(v)
    return float(np.sum(np.abs(v) ** 2))


@dataclass(frozen=True)
class ConvexSampledFunction:
    """A real function sampled on a strictly increasing grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=np.float64)
        vals = np.asarray(self.values, dtype=np.float64)
        if g.ndim != 1 or g.size < 2:
            raise ValueError("grid must be 1-d with at least 2 points")
        if vals.shape != g.shape:
            raise ValueError("grid and values must have equal length")
        if not np.all(np.diff(g) > 0):
            raise ValueError("grid must be strictly increasing")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.grid.size


def difference_quotient_check(f: ConvexSampledFunction, tol: float = 1e-12) -> bool:
    """True iff every triple s < t < u on the grid has increasing slopes.

    Checks (f(t)-f(s))/(t-s) <= (f(u)-f(s))/(u-s) <= (f(u)-f(t))/(u-t) with
    additive slack ``tol``, over all grid triples (not just consecutive ones).
    """
    if len(f) < 3:
        raise ValueError("need at least 3 grid points")
    g, vals = f.grid, f.values
    n = g.size
    for a in range(n - 2):
        for b in range(a + 1, n - 1):
            left = (vals[b] - vals[a]) / (g[b] - g[a])
            for c in range(b + 1, n):
                mid = (vals[c] - vals[a]) / (g[c] - g[a])
                right = (vals[c] - vals[b]) / (g[c] - g[b])
                if left > mid + tol or mid > right + tol:
                    return False
    return True


def support_line(f: ConvexSampledFunction, t_index: int) -> tuple[float, float]:
    """Affine minorant touching a convex sample at grid[t_index].

    The slope is the midpoint of [D_l, D_r], where D_l is the largest slope
    from the left and D_r the smallest slope to the right; at a boundary
    index the available one-sided value is used.  Returns (slope, intercept)
    with intercept chosen so the line passes exactly through the touch point.
    """
    if not 0 <= t_index < len(f):
        raise ValueError("t_index out of range")
    if not difference_quotient_check(f):
        raise NonConvexError("samples are not convex; no support line exists")
    g, vals = f.grid, f.values
    t, ft = g[t_index], vals[t_index]
    d_left = None
    if t_index > 0:
        d_left = max(
            (ft - vals[s]) / (t - g[s]) for s in range(t_index)
        )
    d_right = None
    if t_index < len(f) - 1:
        d_right = min(
            (vals[u] - ft) / (g[u] - t) for u in range(t_index + 1, len(f))
        )
    if d_left is None:
        slope = d_right
    elif d_right is None:
        slope = d_left
    else:
        slope = 0.5 * (d_left + d_right)
    return float(slope), float(ft - slope * t)
