# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch scoring kernel.

Same contract as docketd.kernel._batch_weights_numpy; selected at import
time by docketd.kernel when the extension built.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def batch_weights(double[:, ::1] features,
                  double[::1] coeffs,
                  cnp.int64_t[::1] pendency,
                  long threshold_days,
                  double multiplier,
                  double cap):
    cdef Py_ssize_t n = features.shape[0]
    cdef Py_ssize_t m = features.shape[1]
    cdef Py_ssize_t i, j
    cdef cnp.int64_t k
    cdef double base, eff

    base_out = np.empty(n, dtype=np.float64)
    eff_out = np.empty(n, dtype=np.float64)
    cdef double[::1] bo = base_out
    cdef double[::1] eo = eff_out

    for i in range(n):
        base = 0.0
        for j in range(m):
            base += features[i, j] * coeffs[j]
        bo[i] = base
        eff = base
        if threshold_days > 0:
            k = pendency[i] // threshold_days
            while k > 0 and eff < cap:
                eff *= multiplier
                k -= 1
        if eff > cap:
            eff = cap
        eo[i] = eff
    return base_out, eff_out
