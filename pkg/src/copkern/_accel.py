"""Loop-bound numeric kernels with numba acceleration and a pure-numpy fallback.

Set the environment variable ``COPKERN_DISABLE_NUMBA=1`` to force the numpy
path (also used automatically when numba is unavailable).  Both paths produce
bit-identical results; ``benchmarks/bench_accel.py`` compares their speed.
"""

import os

import numpy as np

_DISABLED = os.environ.get("COPKERN_DISABLE_NUMBA", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _dominance_counts_np(x, y):
    # #{j != i : x_j < x_i and y_j < y_i}, chunked to bound memory
    n = x.shape[0]
    out = np.empty(n, dtype=np.int64)
    step = max(1, 2 ** 22 // max(n, 1))
    for lo in range(0, n, step):
        hi = min(lo + step, n)
        block = (x[None, :] < x[lo:hi, None]) & (y[None, :] < y[lo:hi, None])
        out[lo:hi] = block.sum(axis=1)
    return out


def _levy_check_np(f, g, k):
    # Levy condition F(y-eps)-eps <= G(y) <= F(y+eps)+eps at eps = k*h,
    # checked on the common grid (h = grid step, index shift k).
    m = f.shape[0]
    eps = k / (m - 1)
    lo = np.concatenate((np.zeros(k), f[: m - k])) if k else f
    hi = np.concatenate((f[k:], np.ones(k))) if k else f
    return bool(np.all(lo - eps <= g + 1e-12) and np.all(g <= hi + eps + 1e-12))


if HAVE_NUMBA:

    @njit(cache=True)
    def _dominance_counts_nb(x, y):
        n = x.shape[0]
        out = np.empty(n, dtype=np.int64)
        for i in range(n):
            c = 0
            for j in range(n):
                if x[j] < x[i] and y[j] < y[i]:
                    c += 1
            out[i] = c
        return out

    @njit(cache=True)
    def _levy_check_nb(f, g, k):
        m = f.shape[0]
        eps = k / (m - 1)
        for j in range(m):
            lo = f[j - k] if j - k >= 0 else 0.0
            hi = f[j + k] if j + k < m else 1.0
            if lo - eps > g[j] + 1e-12 or g[j] > hi + eps + 1e-12:
                return False
        return True

    dominance_counts = _dominance_counts_nb
    _levy_check = _levy_check_nb
else:
    dominance_counts = _dominance_counts_np
    _levy_check = _levy_check_np


def levy_distance(f, g):
    """Levy metric between two CDFs tabulated on a common uniform grid on [0,1].

    `f` and `g` hold the CDF values at ``j/(m-1)``, ``j = 0..m-1``.  The result
    is resolved to the grid step (binary search over index shifts), which is
    what metrizing weak convergence of conditional laws with atoms requires.
    """
    f = np.ascontiguousarray(f, dtype=np.float64)
    g = np.ascontiguousarray(g, dtype=np.float64)
    m = f.shape[0]
    lo, hi = 0, m - 1
    if _levy_check(f, g, 0):
        return 0.0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _levy_check(f, g, mid):
            hi = mid
        else:
            lo = mid
    return hi / (m - 1)
