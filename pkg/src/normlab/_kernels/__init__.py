"""Kernel backend selection.

The hot inner loops (cyclic Jacobi rotations, dyadic averaging ladders, Haar
butterflies) exist twice: a compiled Cython module ``_core`` and a pure
numpy module ``_pykernels`` with identical signatures and semantics.  The
compiled module is preferred when importable; set ``NORMLAB_PURE_PYTHON=1``
to force the fallback (used by the cross-backend tests and the benchmark).
"""

import os

if os.environ.get("NORMLAB_PURE_PYTHON"):
    from normlab._kernels import _pykernels as impl

    BACKEND = "python"
else:
    try:
        from normlab._kernels import _core as impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build environment
        from normlab._kernels import _pykernels as impl  # type: ignore[no-redef]

        BACKEND = "python"

jacobi_hermitian = impl.jacobi_hermitian
expectation_ladder = impl.expectation_ladder
haar_forward = impl.haar_forward
haar_inverse = impl.haar_inverse

__all__ = [
    "BACKEND",
    "jacobi_hermitian",
    "expectation_ladder",
    "haar_forward",
    "haar_inverse",
]
