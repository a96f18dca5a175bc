"""Counterexample copula families separating the convergence notions.

`strip_copula` mixes independence with a single completely dependent dyadic
strip: the D1-distance to independence vanishes with the strip width while
the conditional laws on the strip stay degenerate.  `shift_copula` is the
completely dependent copula of x -> 2^n x mod 1, whose transpose converges
to independence although the copula itself does not.
"""

import numpy as np

from .archimedean import make_generator, make_w_generator
from .core import CopulaModel


def strip_index(n: int):
    """Map the sequence index n >= 1 to the (N, i) strip parameters."""
    if n < 1:
        raise ValueError("strip copula index must be >= 1")
    N = int(np.floor(np.log2(n + 1)))
    i = n + 2 - 2 ** N
    return N, i


def strip_copula(n: int) -> CopulaModel:
    """Copula with kernel 1_{[0,y]}(2^N x + 1 - i) on the i-th dyadic strip.

    Off the strip [(i-1)/2^N, i/2^N] the kernel is the independence kernel.
    """
    N, i = strip_index(n)
    w = 0.5 ** N
    lo = (i - 1) * w

    def cdf(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        # strip overlap of [0,x] and its completely dependent contribution
        s = np.clip(np.minimum(x, lo + w) - lo, 0.0, w)
        return y * (np.clip(x, 0.0, 1.0) - s) + np.minimum(s, y * w)

    def kernel_cdf(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        h = (x - lo) / w
        on_strip = (x >= lo) & (x <= lo + w)
        return np.where(on_strip, (h <= y).astype(float), np.clip(y, 0.0, 1.0))

    return CopulaModel(cdf=cdf, kernel_cdf=kernel_cdf, label=f"strip:{n}")


def shift_copula(n: int) -> CopulaModel:
    """Completely dependent copula of h_n(x) = 2^n x mod 1."""
    if n < 0:
        raise ValueError("shift copula index must be >= 0")
    k = 2 ** n

    def cdf(x, y):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
        p = np.floor(k * x)
        frac = k * x - p
        return (p * y + np.minimum(frac, y)) / k

    def kernel_cdf(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        h = k * np.clip(x, 0.0, 1.0) % 1.0
        return (h <= y).astype(float)

    def transpose_factory():
        def t_cdf(x, y):
            return cdf(y, x)

        def t_kernel(x, y):
            # discrete uniform on {(x+i)/2^n : i = 0..2^n - 1}
            x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
            cnt = np.floor(k * np.clip(y, 0, 1) - np.clip(x, 0, 1)) + 1.0
            return np.clip(cnt / k, 0.0, 1.0)

        model = CopulaModel(
            cdf=t_cdf, kernel_cdf=t_kernel, label=f"shift:{n}^t"
        )
        object.__setattr__(model, "transpose_factory", lambda: shift_copula(n))
        return model

    return CopulaModel(
        cdf=cdf,
        kernel_cdf=kernel_cdf,
        label=f"shift:{n}",
        transpose_factory=transpose_factory,
    )


def strict_generators_approaching_w(k: int):
    """Strict generators converging pointwise on (0,1] to the W generator.

    phi_k(t) = (2(1-t) + (1/k)(-log t)/log 2) / (1 + 1/k); each phi_k is
    convex, strictly decreasing, normalized and strict, while the limit is
    the non-strict W generator.
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    ln2 = np.log(2.0)
    scale = 1.0 + 1.0 / k

    def phi(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return (2.0 * (1.0 - t) + (-np.log(t)) / (k * ln2)) / scale

    def dplus(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return (-2.0 - 1.0 / (k * ln2 * t)) / scale

    return make_generator(phi, dplus, np.inf, f"w-approx:{k}")


def w_limit_generator():
    return make_w_generator()
