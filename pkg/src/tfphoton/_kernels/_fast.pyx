# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see py_backend for contracts)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def corr_pure(values):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] v = np.ascontiguousarray(
        values, dtype=np.complex128
    )
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t c = n // 2
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((n, n), dtype=np.complex128)
    cdef Py_ssize_t m, s, a, b
    for m in range(n):
        for s in range(n):
            a = m - s + c
            b = m + s - c
            if 0 <= a < n and 0 <= b < n:
                out[m, s] = v[a] * v[b].conjugate()
    return out


def corr_mixed(rho):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] r = np.ascontiguousarray(
        rho, dtype=np.complex128
    )
    cdef Py_ssize_t n = r.shape[0]
    cdef Py_ssize_t c = n // 2
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((n, n), dtype=np.complex128)
    cdef Py_ssize_t m, s, a, b
    for m in range(n):
        for s in range(n):
            a = m - s + c
            b = m + s - c
            if 0 <= a < n and 0 <= b < n:
                out[m, s] = r[a, b]
    return out


def lag_sums(m):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] mat = np.ascontiguousarray(
        m, dtype=np.complex128
    )
    cdef Py_ssize_t n = mat.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(2 * n - 1, dtype=np.complex128)
    cdef Py_ssize_t a, b
    cdef double complex acc
    cdef Py_ssize_t lag
    for lag in range(-(n - 1), n):
        acc = 0
        # iterate the diagonal a - b == lag in increasing a, matching the
        # summation order of the numpy backend (np.trace) bit for bit
        a = lag if lag > 0 else 0
        b = a - lag
        while a < n and b < n:
            acc = acc + mat[a, b]
            a += 1
            b += 1
        out[lag + n - 1] = acc
    return out
