# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-python kernels in ``_pykernels``.

Same signatures, same semantics; see that module for the contracts.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def jacobi_hermitian(a_in, double tol, int max_sweeps):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(a_in, dtype=np.complex128)
    cdef int n = a.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] q = np.eye(n, dtype=np.complex128)
    cdef double norm_all = 0.0
    cdef int i, j, p, r, sweeps
    cdef double mag, app, arr, tau, t, c, s, off2, threshold2
    cdef double complex apr, phase, tmp_p, tmp_r, sphase_conj, sphase

    for i in range(n):
        for j in range(n):
            norm_all += (a[i, j].real * a[i, j].real +
                         a[i, j].imag * a[i, j].imag)
    threshold2 = tol * tol * norm_all

    if n == 1:
        return np.asarray(q), np.array([a[0, 0].real]), 0.0, 0

    sweeps = 0
    while sweeps < max_sweeps:
        off2 = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off2 += (a[i, j].real * a[i, j].real +
                             a[i, j].imag * a[i, j].imag)
        if off2 <= threshold2:
            break
        sweeps += 1
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                mag = sqrt(apr.real * apr.real + apr.imag * apr.imag)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                arr = a[r, r].real
                phase = apr / mag
                tau = (arr - app) / (2.0 * mag)
                # Smaller root of t^2 - 2*tau*t - 1 = 0; zeroes (p, r).
                if tau >= 0:
                    t = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sphase = s * phase
                sphase_conj = s * phase.conjugate()
                # A <- J^H A J with J[p,p]=c, J[p,r]=-s*phase,
                # J[r,p]=s*conj(phase), J[r,r]=c.
                for i in range(n):
                    tmp_p = a[i, p]
                    tmp_r = a[i, r]
                    a[i, p] = tmp_p * c + tmp_r * sphase_conj
                    a[i, r] = -tmp_p * sphase + tmp_r * c
                for i in range(n):
                    tmp_p = a[p, i]
                    tmp_r = a[r, i]
                    a[p, i] = tmp_p * c + tmp_r * sphase
                    a[r, i] = -tmp_p * sphase_conj + tmp_r * c
                a[p, r] = 0.0
                a[r, p] = 0.0
                a[p, p] = a[p, p].real
                a[r, r] = a[r, r].real
                for i in range(n):
                    tmp_p = q[i, p]
                    tmp_r = q[i, r]
                    q[i, p] = tmp_p * c + tmp_r * sphase_conj
                    q[i, r] = -tmp_p * sphase + tmp_r * c

    off2 = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                off2 += (a[i, j].real * a[i, j].real +
                         a[i, j].imag * a[i, j].imag)
    eigs = np.empty(n, dtype=np.float64)
    for i in range(n):
        eigs[i] = a[i, i].real
    return np.asarray(q), eigs, sqrt(off2), sweeps


cdef int _checked_level(Py_ssize_t n) except -1:
    cdef int level = 0
    while (1 << level) < n:
        level += 1
    if (1 << level) != n:
        raise ValueError("length must be a power of 2")
    return level


def expectation_ladder(values):
    values = np.asarray(values)
    cdef Py_ssize_t n = values.shape[0]
    cdef int level = _checked_level(n)
    if np.iscomplexobj(values):
        return _ladder_complex(values.astype(np.complex128, copy=False), n, level)
    return _ladder_real(values.astype(np.float64, copy=False), n, level)


cdef _ladder_real(cnp.ndarray[cnp.float64_t, ndim=1] values, Py_ssize_t n, int level):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((level + 1, n), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] compact = values.copy()
    cdef Py_ssize_t i, j, k, width, m
    cdef double v
    for j in range(n):
        out[level, j] = values[j]
    m = n
    for k in range(level - 1, -1, -1):
        m = m >> 1
        for j in range(m):
            compact[j] = 0.5 * (compact[2 * j] + compact[2 * j + 1])
        width = n >> k
        for j in range(m):
            v = compact[j]
            for i in range(j * width, (j + 1) * width):
                out[k, i] = v
    return out


cdef _ladder_complex(cnp.ndarray[cnp.complex128_t, ndim=1] values, Py_ssize_t n, int level):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((level + 1, n), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] compact = values.copy()
    cdef Py_ssize_t i, j, k, width, m
    cdef double complex v
    for j in range(n):
        out[level, j] = values[j]
    m = n
    for k in range(level - 1, -1, -1):
        m = m >> 1
        for j in range(m):
            compact[j] = 0.5 * (compact[2 * j] + compact[2 * j + 1])
        width = n >> k
        for j in range(m):
            v = compact[j]
            for i in range(j * width, (j + 1) * width):
                out[k, i] = v
    return out


def haar_forward(values):
    values = np.asarray(values)
    cdef Py_ssize_t n = values.shape[0]
    cdef int level = _checked_level(n)
    out = np.empty(n, dtype=np.complex128 if np.iscomplexobj(values) else np.float64)
    compact = values.astype(out.dtype, copy=False)
    cdef int k
    cdef double scale
    for k in range(level - 1, -1, -1):
        left = compact[0::2]
        right = compact[1::2]
        scale = 2.0 ** (-0.5 * k)
        out[1 << k: 1 << (k + 1)] = scale * 0.5 * (right - left)
        compact = 0.5 * (left + right)
    out[0] = compact[0] if level > 0 else values[0]
    return out


def haar_inverse(coeffs):
    coeffs = np.asarray(coeffs)
    cdef Py_ssize_t n = coeffs.shape[0]
    cdef int level = _checked_level(n)
    compact = coeffs[0:1].copy()
    cdef int k
    cdef double scale
    for k in range(level):
        c = coeffs[1 << k: 1 << (k + 1)]
        scale = 2.0 ** (0.5 * k)
        step = scale * c
        nxt = np.empty(2 << k, dtype=coeffs.dtype)
        nxt[0::2] = compact - step
        nxt[1::2] = compact + step
        compact = nxt
    return compact
