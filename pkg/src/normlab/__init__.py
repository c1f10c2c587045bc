"""normlab: a numerical laboratory for norms and dyadic harmonic analysis.

The package implements, with explicit constants and constructive algorithms,
the finite-dimensional toolkit of p-norms and dual norms with extremizers,
constructive Hahn-Banach extension for polyhedral gauges, operator and
Schatten norms on top of a from-scratch Jacobi eigensolver, the Riesz
log-convexity of operator p-norms, and dyadic analysis on [0,1): conditional
expectations, maximal and square functions, Haar/Rademacher/Walsh systems,
and stopping-time decompositions.

Every quantitative claim is backed by a registered verification check; see
``normlab.verify`` and the ``verify`` command line tool.
"""

from normlab._kernels import BACKEND as kernel_backend
from normlab.exponents import INF, Exponent, as_exponent, conjugate_exponent

__version__ = "0.1.0"

__all__ = [
    "Exponent",
    "INF",
    "as_exponent",
    "conjugate_exponent",
    "kernel_backend",
    "__version__",
]
