"""Norm exponents p in [1, inf] with exact conjugacy arithmetic.

Infinity is the IEEE ``inf`` value, treated as a distinguished symbol: the
conjugate pairs (1, inf) and (inf, 1) are exact, and 1/inf is 0 by
convention.  Finite conjugates use q = p/(p-1), which round-trips to
machine precision.
"""

from __future__ import annotations

import math


class Exponent:
    """An exponent p in [1, inf]; immutable and hashable."""

    __slots__ = ("value", "_partner")

    def __init__(self, value: float):
        value = float(value)
        if math.isnan(value) or value < 1.0:
            raise ValueError(f"exponent must lie in [1, inf], got {value}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "_partner", None)

    def __setattr__(self, name, val):  # pragma: no cover - immutability guard
        raise AttributeError("Exponent is immutable")

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    @property
    def reciprocal(self) -> float:
        """1/p with the convention 1/inf = 0."""
        return 0.0 if self.is_inf else 1.0 / self.value

    def conjugate(self) -> "Exponent":
        """The exponent q with 1/p + 1/q = 1; exact at the endpoints.

        The result keeps a back-reference, so conjugating twice returns the
        original value exactly: the involution never drifts, even where the
        floating-point formula q/(q-1) would lose digits.
        """
        if self._partner is not None:
            return self._partner
        if self.is_inf:
            partner = Exponent(1.0)
        elif self.value == 1.0:
            partner = Exponent(math.inf)
        else:
            partner = Exponent(self.value / (self.value - 1.0))
        object.__setattr__(partner, "_partner", self)
        object.__setattr__(self, "_partner", partner)
        return partner

    def __float__(self) -> float:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, Exponent):
            return self.value == other.value
        if isinstance(other, (int, float)):
            return self.value == float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return "Exponent(inf)" if self.is_inf else f"Exponent({self.value:g})"


INF = Exponent(math.inf)


def as_exponent(p) -> Exponent:
    """Coerce a float, int, 'inf' string, or Exponent to an Exponent."""
    if isinstance(p, Exponent):
        return p
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        return Exponent(float(p))
    return Exponent(p)


def conjugate_exponent(p) -> Exponent:
    """q with 1/p + 1/q = 1; conjugate(1) = inf, conjugate(inf) = 1."""
    return as_exponent(p).conjugate()
