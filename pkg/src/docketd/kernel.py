"""Batch scoring kernel with compiled/pure implementations.

The hot loop of a simulation is re-scoring the pending backlog every day:
a dot product per case plus the compounded aging boost. The Cython
extension (docketd._speedups) is used when built; otherwise a numpy
fallback with identical semantics. Set DOCKETD_PURE=1 to force the
fallback (used by the benchmark).
"""

from __future__ import annotations

import os

import numpy as np

try:
    if os.environ.get("DOCKETD_PURE"):
        raise ImportError("forced pure mode")
    from . import _speedups

    IMPLEMENTATION = "cython"
except ImportError:
    _speedups = None
    IMPLEMENTATION = "numpy"


def _batch_weights_numpy(features, coeffs, pendency, threshold_days, multiplier, cap):
    base = features @ coeffs
    if threshold_days > 0:
        k = pendency // threshold_days
    else:
        k = np.zeros_like(pendency)
    eff = np.minimum(cap, base * np.power(multiplier, k))
    return base, eff


def batch_weights(features, coeffs, pendency, threshold_days, multiplier, cap):
    """Base and aging-boosted weights for a feature matrix.

    features: (n, 5) float64, coeffs: (5,) float64, pendency: (n,) int64
    days since last activity. Returns (base, effective) float64 arrays;
    effective = min(cap, base * multiplier ** (pendency // threshold_days)).
    """
    features = np.ascontiguousarray(features, dtype=np.float64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    pendency = np.ascontiguousarray(pendency, dtype=np.int64)
    if _speedups is not None:
        return _speedups.batch_weights(
            features, coeffs, pendency, int(threshold_days), float(multiplier), float(cap)
        )
    return _batch_weights_numpy(features, coeffs, pendency, threshold_days, multiplier, cap)
