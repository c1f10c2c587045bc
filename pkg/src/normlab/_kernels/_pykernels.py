"""Pure numpy implementations of the hot kernels.

Semantics must match ``_core.pyx`` bit-for-bit up to floating point
reassociation; the cross-backend test compares the two directly.
"""

from __future__ import annotations

import numpy as np


def jacobi_hermitian(a: np.ndarray, tol: float, max_sweeps: int):
    """Cyclic-by-row Jacobi diagonalization of a Hermitian matrix.

    Input is complex128 and already verified Hermitian by the caller.
    Returns (q, eigs, off, sweeps) where ``a ~ q @ diag(eigs) @ q*``,
    ``off`` is the final off-diagonal Frobenius norm, and convergence means
    off <= tol * ||a||_F.  Eigenvalues are unsorted; the caller sorts.
    """
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    norm_all = np.linalg.norm(a)
    threshold = tol * norm_all
    sweeps = 0
    if n == 1:
        return q, np.array([a[0, 0].real]), 0.0, 0

    def off_norm(m):
        d = m - np.diag(np.diag(m))
        return np.linalg.norm(d)

    while sweeps < max_sweeps:
        if off_norm(a) <= threshold:
            break
        sweeps += 1
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                mag = abs(apr)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                arr = a[r, r].real
                phase = apr / mag
                tau = (arr - app) / (2.0 * mag)
                # Smaller root of t^2 - 2*tau*t - 1 = 0 for this rotation
                # convention; zeroes the (p, r) entry exactly.
                if tau >= 0:
                    t = -1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Unitary plane rotation J: J[p,p]=c, J[p,r]=-s*phase,
                # J[r,p]=s*conj(phase), J[r,r]=c; apply A <- J^H A J, Q <- Q J.
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = col_p * c + col_r * (s * np.conj(phase))
                a[:, r] = col_p * (-s * phase) + col_r * c
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = row_p * c + row_r * (s * phase)
                a[r, :] = row_p * (-s * np.conj(phase)) + row_r * c
                a[p, r] = 0.0
                a[r, p] = 0.0
                a[p, p] = a[p, p].real
                a[r, r] = a[r, r].real
                qcol_p = q[:, p].copy()
                qcol_r = q[:, r].copy()
                q[:, p] = qcol_p * c + qcol_r * (s * np.conj(phase))
                q[:, r] = qcol_p * (-s * phase) + qcol_r * c
    off = float(off_norm(a))
    return q, np.diag(a).real.copy(), off, sweeps


def expectation_ladder(values: np.ndarray) -> np.ndarray:
    """All dyadic conditional expectations of a level-L cell-value array.

    Input has length n = 2^L.  Output ``out`` has shape (L+1, n) with
    ``out[k, j]`` the average over the level-k cell containing cell j;
    row L is the input itself.
    """
    values = np.asarray(values)
    n = values.shape[0]
    level = n.bit_length() - 1
    if 1 << level != n:
        raise ValueError("length must be a power of 2")
    out = np.empty((level + 1, n), dtype=values.dtype)
    out[level] = values
    compact = values
    for k in range(level - 1, -1, -1):
        compact = 0.5 * (compact[0::2] + compact[1::2])
        out[k] = np.repeat(compact, n >> k)
    return out


def haar_forward(values: np.ndarray) -> np.ndarray:
    """Orthonormal Haar coefficients of a level-L cell-value array.

    Output layout: index 0 is the mean (coefficient of the constant
    function); the coefficient of the interval at depth k (length 2^-k),
    position i, sits at index 2^k + i.  Sign convention: the Haar function
    is negative on the left half.
    """
    values = np.asarray(values)
    n = values.shape[0]
    level = n.bit_length() - 1
    if 1 << level != n:
        raise ValueError("length must be a power of 2")
    out = np.empty(n, dtype=values.dtype)
    compact = values
    for k in range(level - 1, -1, -1):
        left = compact[0::2]
        right = compact[1::2]
        out[1 << k : 1 << (k + 1)] = (2.0 ** (-0.5 * k)) * 0.5 * (right - left)
        compact = 0.5 * (left + right)
    out[0] = compact[0] if level > 0 else values[0]
    return out


def haar_inverse(coeffs: np.ndarray) -> np.ndarray:
    """Inverse of :func:`haar_forward`."""
    coeffs = np.asarray(coeffs)
    n = coeffs.shape[0]
    level = n.bit_length() - 1
    if 1 << level != n:
        raise ValueError("length must be a power of 2")
    compact = coeffs[0:1].copy()
    for k in range(level):
        c = coeffs[1 << k : 1 << (k + 1)]
        step = (2.0 ** (0.5 * k)) * c
        nxt = np.empty(2 << k, dtype=coeffs.dtype)
        nxt[0::2] = compact - step
        nxt[1::2] = compact + step
        compact = nxt
    return compact
