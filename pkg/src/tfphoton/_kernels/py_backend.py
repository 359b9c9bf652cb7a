"""Pure-numpy implementations of the hot kernels.

Same contracts as the compiled backend in ``_fast.pyx``; selection happens in
the package ``__init__``.  Kept dependency-free so the package works without a
C toolchain.
"""

import numpy as np


def corr_pure(values):
    """Chronocyclic correlation matrix of a pure spectral amplitude.

    ``out[m, s] = values[m-s+N/2] * conj(values[m+s-N/2])`` with zeros where
    either index falls off the grid.
    """
    values = np.ascontiguousarray(values, dtype=np.complex128)
    n = values.shape[0]
    c = n // 2
    m = np.arange(n)[:, None]
    s = np.arange(n)[None, :]
    a = m - s + c
    b = m + s - c
    ok = (a >= 0) & (a < n) & (b >= 0) & (b < n)
    out = np.zeros((n, n), dtype=np.complex128)
    out[ok] = values[a[ok]] * np.conj(values[b[ok]])
    return out


def corr_mixed(rho):
    """Chronocyclic correlation matrix of a density matrix.

    ``out[m, s] = rho[m-s+N/2, m+s-N/2]`` with zeros off the grid.
    """
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    n = rho.shape[0]
    c = n // 2
    m = np.arange(n)[:, None]
    s = np.arange(n)[None, :]
    a = m - s + c
    b = m + s - c
    ok = (a >= 0) & (a < n) & (b >= 0) & (b < n)
    out = np.zeros((n, n), dtype=np.complex128)
    out[ok] = rho[a[ok], b[ok]]
    return out


def lag_sums(m):
    """Sums of ``m`` over constant index difference.

    ``out[l + N - 1] = sum over a-b == l of m[a, b]`` for ``l`` in
    ``[-(N-1), N-1]``.
    """
    m = np.ascontiguousarray(m, dtype=np.complex128)
    n = m.shape[0]
    out = np.empty(2 * n - 1, dtype=np.complex128)
    for lag in range(-(n - 1), n):
        # a - b == lag corresponds to the diagonal at offset -lag
        out[lag + n - 1] = np.trace(m, offset=-lag)
    return out
