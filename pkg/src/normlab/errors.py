"""Domain-specific exceptions.

Argument validation failures (shape mismatches, out-of-range parameters)
raise plain ``ValueError``; the classes here flag conditions with
mathematical meaning so callers can distinguish them from bad inputs.
"""


class NormlabError(Exception):
    """Base class for domain errors."""


class NonConvexError(NormlabError):
    """Sampled function failed the increasing-difference-quotient test."""


class NonHermitianError(NormlabError):
    """Matrix expected to equal its conjugate transpose does not."""


class ConvergenceError(NormlabError):
    """Iterative solver did not reach its tolerance within its budget."""


class NotPSDError(NormlabError):
    """Matrix expected to be positive semidefinite has a negative eigenvalue."""


class GaugeDominationError(NormlabError):
    """Functional exceeds the gauge on its own subspace."""


class NonAbsorbingError(NormlabError):
    """Gauge unit set does not absorb the given direction."""
