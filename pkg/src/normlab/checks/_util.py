"""Shared samplers and margin helpers for the verification checks."""

from __future__ import annotations

import numpy as np

from normlab.dyadic import DyadicStepFunction


def pick(rng: np.random.Generator, seq):
    return seq[int(rng.integers(len(seq)))]


def rand_vector(rng, dim: int, complex_field: bool = False) -> np.ndarray:
    """Entries uniform in [-1, 1], or uniform on the unit disc when complex."""
    if complex_field:
        radius = np.sqrt(rng.random(dim))
        angle = 2.0 * np.pi * rng.random(dim)
        return radius * np.exp(1j * angle)
    return rng.uniform(-1.0, 1.0, dim)


def rand_matrix(rng, rows: int, cols: int, complex_field: bool = False) -> np.ndarray:
    return rand_vector(rng, rows * cols, complex_field).reshape(rows, cols)


def rand_hermitian(rng, dim: int, complex_field: bool = False) -> np.ndarray:
    b = rand_matrix(rng, dim, dim, complex_field)
    return (b + b.conj().T) / 2.0


def rand_step(
    rng, levels, complex_field: bool = False, scale: float = 1.0
) -> DyadicStepFunction:
    level = int(pick(rng, list(levels)))
    vals = rand_vector(rng, 1 << level, complex_field) * scale
    return DyadicStepFunction(level, vals)


def finite_ps(p_grid) -> list[float]:
    return [float(p) for p in p_grid if np.isfinite(p)]


def margin_le(lhs: float, rhs: float, slack: float = 0.0) -> float:
    """Margin of the claim lhs <= rhs + slack."""
    return rhs + slack - lhs


def margin_eq(a: float, b: float, tol: float) -> float:
    """Margin of the claim |a - b| <= tol."""
    return tol - abs(a - b)


def bool_margin(ok: bool) -> float:
    return 0.0 if ok else -1.0
