"""Numerically hot kernels with two interchangeable implementations.

The loop bodies are compiled with numba's @njit by default; setting the
environment variable ``FUZZYNET_NO_NUMBA=1`` (or numba being unavailable)
selects pure-numpy fallbacks instead.  Both paths are written to produce
bit-identical results: accumulations run in the same order and numpy's
small-axis sums are sequential, so tests may compare them exactly.

Callers should import the module (``from . import _kernels``) and use
attribute access, so reloading this module after changing the flag switches
implementations everywhere.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is an install-time dependency
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("FUZZYNET_NO_NUMBA", "").strip().lower() not in (
    "1",
    "true",
    "yes",
)

__all__ = [
    "HAS_NUMBA",
    "USE_NUMBA",
    "centroid_batch",
    "pairwise_user_sim",
    "pairwise_system_sim",
]


# ---- loop bodies (njit-compiled when numba is active) ----------------------


def _centroid_batch_loops(corners):
    """Centroids of n trapezoids given as an (n, 4) float64 array."""
    n = corners.shape[0]
    out = np.empty(n)
    for i in range(n):
        a = corners[i, 0]
        b = corners[i, 1]
        c = corners[i, 2]
        d = corners[i, 3]
        area2 = (c + d) - (a + b)
        if area2 <= 0.0:
            out[i] = a
        else:
            moment6 = (b - a) * (a + 2.0 * b) + 3.0 * (c * c - b * b) + (d - c) * (d + 2.0 * c)
            out[i] = moment6 / (3.0 * area2)
    return out


def _pairwise_user_sim_loops(cent, mask, round_scale):
    """Pairwise similarity of packed user variables.

    ``cent`` is (V, P, L): centroid per variable, procedure, level (already
    quantized by the caller); ``mask`` marks which cells exist.  For each
    pair: per shared procedure, mean over shared levels of min and of max;
    ratio of the two maxima, each rounded to 1/round_scale when
    round_scale > 0.  Pairs with no shared cells, or an all-zero union, get
    the sentinel -1.0 (incomparable).
    """
    count = cent.shape[0]
    procs = cent.shape[1]
    levels = cent.shape[2]
    out = np.empty((count, count))
    for i in range(count):
        for j in range(i, count):
            best_min = -1.0
            best_max = -1.0
            for p in range(procs):
                s_min = 0.0
                s_max = 0.0
                shared = 0
                for l in range(levels):
                    if mask[i, p, l] and mask[j, p, l]:
                        ci = cent[i, p, l]
                        cj = cent[j, p, l]
                        s_min += min(ci, cj)
                        s_max += max(ci, cj)
                        shared += 1
                if shared > 0:
                    f_min = s_min / shared
                    f_max = s_max / shared
                    if f_min > best_min:
                        best_min = f_min
                    if f_max > best_max:
                        best_max = f_max
            if best_max < 0.0:
                value = -1.0
            else:
                if round_scale > 0.0:
                    best_min = np.rint(best_min * round_scale) / round_scale
                    best_max = np.rint(best_max * round_scale) / round_scale
                if best_max <= 0.0:
                    value = -1.0
                else:
                    value = best_min / best_max
            out[i, j] = value
            out[j, i] = value
    return out


def _pairwise_system_sim_loops(deg):
    """Pairwise similarity of packed system variables.

    ``deg`` is (V, P): degree per variable and procedure, 0 where missing.
    Similarity is max_p min / max_p max; all-zero pairs get the sentinel -1.
    """
    count = deg.shape[0]
    procs = deg.shape[1]
    out = np.empty((count, count))
    for i in range(count):
        for j in range(i, count):
            best_min = 0.0
            best_max = 0.0
            for p in range(procs):
                di = deg[i, p]
                dj = deg[j, p]
                mn = di if di < dj else dj
                mx = di if di > dj else dj
                if mn > best_min:
                    best_min = mn
                if mx > best_max:
                    best_max = mx
            value = -1.0 if best_max <= 0.0 else best_min / best_max
            out[i, j] = value
            out[j, i] = value
    return out


# ---- numpy fallbacks --------------------------------------------------------


def _centroid_batch_numpy(corners):
    a = corners[:, 0]
    b = corners[:, 1]
    c = corners[:, 2]
    d = corners[:, 3]
    area2 = (c + d) - (a + b)
    moment6 = (b - a) * (a + 2.0 * b) + 3.0 * (c * c - b * b) + (d - c) * (d + 2.0 * c)
    out = a.copy()
    safe = area2 > 0.0
    out[safe] = moment6[safe] / (3.0 * area2[safe])
    return out


def _pairwise_user_sim_numpy(cent, mask, round_scale):
    count = cent.shape[0]
    out = np.empty((count, count))
    for i in range(count):
        ci = cent[i]
        mi = mask[i]
        for j in range(i, count):
            shared = mi & mask[j]
            counts = shared.sum(axis=1)
            valid = counts > 0
            if not valid.any():
                value = -1.0
            else:
                cj = cent[j]
                # adding masked-out zeros keeps the accumulation order of the
                # loop kernel, so both paths agree bit-for-bit
                mins = np.where(shared, np.minimum(ci, cj), 0.0).sum(axis=1)
                maxs = np.where(shared, np.maximum(ci, cj), 0.0).sum(axis=1)
                best_min = float((mins[valid] / counts[valid]).max())
                best_max = float((maxs[valid] / counts[valid]).max())
                if round_scale > 0.0:
                    best_min = float(np.rint(best_min * round_scale) / round_scale)
                    best_max = float(np.rint(best_max * round_scale) / round_scale)
                value = -1.0 if best_max <= 0.0 else best_min / best_max
            out[i, j] = value
            out[j, i] = value
    return out


def _pairwise_system_sim_numpy(deg):
    mins = np.minimum(deg[:, None, :], deg[None, :, :]).max(axis=2)
    maxs = np.maximum(deg[:, None, :], deg[None, :, :]).max(axis=2)
    positive = maxs > 0.0
    return np.where(positive, mins / np.where(positive, maxs, 1.0), -1.0)


if USE_NUMBA:
    centroid_batch = njit(cache=True)(_centroid_batch_loops)
    pairwise_user_sim = njit(cache=True)(_pairwise_user_sim_loops)
    pairwise_system_sim = njit(cache=True)(_pairwise_system_sim_loops)
else:
    centroid_batch = _centroid_batch_numpy
    pairwise_user_sim = _pairwise_user_sim_numpy
    pairwise_system_sim = _pairwise_system_sim_numpy
