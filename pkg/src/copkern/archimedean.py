"""Archimedean generators and the induced copulas, kernels and Kendall functions.

Generators are normalized so that phi(1/2) = 1 and treated as right-continuous
at 0.  Strict generators have phi(0+) = +inf; the right derivative D+phi is
non-decreasing, right-continuous, with D+phi(1) = 0 and D+phi(0) = -inf in the
strict case.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import CopulaModel

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class Generator:
    phi: Callable            # (0,1] -> [0,inf), vectorized
    dplus_phi: Callable      # right derivative on (0,1), vectorized
    inverse: Callable        # pseudo-inverse phi^- on [0,inf], vectorized
    phi_at_zero: float       # phi(0+), may be inf
    strict: bool
    label: str


@dataclass(frozen=True)
class KendallFunction:
    eval: Callable           # [0,1] -> [0,1], nondecreasing, eval(t) >= t


def _bisect_inverse(phi: Callable, phi_at_zero: float) -> Callable:
    """Monotone bisection pseudo-inverse for generators without a closed form."""

    def inverse(s):
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        lo = np.zeros_like(s)
        hi = np.ones_like(s)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                v = np.asarray(phi(np.maximum(mid, 1e-300)))
            above = v > s
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
        out = 0.5 * (lo + hi)
        out = np.where(s >= phi_at_zero, 0.0, out)
        out = np.where(s <= 0.0, 1.0, out)
        return float(out[0]) if scalar else out

    return inverse


def make_generator(
    phi: Callable,
    dplus_phi: Callable,
    phi_at_zero: float,
    label: str,
    inverse: Callable = None,
) -> Generator:
    strict = np.isinf(phi_at_zero)
    if inverse is None:
        inverse = _bisect_inverse(phi, phi_at_zero)
    return Generator(
        phi=phi,
        dplus_phi=dplus_phi,
        inverse=inverse,
        phi_at_zero=phi_at_zero,
        strict=strict,
        label=label,
    )


def make_clayton(theta: float) -> Generator:
    if theta <= 0:
        raise ValueError("Clayton parameter must be positive")
    c = 2.0 ** theta - 1.0

    def phi(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return (t ** (-theta) - 1.0) / c

    def dplus(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return -theta * t ** (-theta - 1.0) / c

    def inverse(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(over="ignore"):
            return np.where(s <= 0.0, 1.0, (1.0 + c * s) ** (-1.0 / theta))

    return make_generator(phi, dplus, np.inf, f"clayton:{theta:g}", inverse)


def make_gumbel(theta: float) -> Generator:
    if theta < 1:
        raise ValueError("Gumbel parameter must be >= 1")

    def phi(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return (-np.log(t) / _LN2) ** theta

    def dplus(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return -theta * (-np.log(t)) ** (theta - 1.0) / (t * _LN2 ** theta)

    def inverse(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(over="ignore"):
            return np.where(s <= 0.0, 1.0, np.exp(-_LN2 * s ** (1.0 / theta)))

    return make_generator(phi, dplus, np.inf, f"gumbel:{theta:g}", inverse)


def make_frank(theta: float) -> Generator:
    if theta == 0:
        raise ValueError("Frank parameter must be nonzero")
    em1 = np.expm1(-theta)           # e^{-theta} - 1
    norm = -np.log(np.expm1(-theta / 2.0) / em1)

    def phi(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return -np.log(np.expm1(-theta * t) / em1) / norm

    def dplus(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return theta * np.exp(-theta * t) / np.expm1(-theta * t) / norm

    def inverse(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(over="ignore"):
            out = -np.log1p(np.exp(-s * norm) * em1) / theta
        return np.where(s <= 0.0, 1.0, out)

    return make_generator(phi, dplus, np.inf, f"frank:{theta:g}", inverse)


def make_w_generator() -> Generator:
    """Generator 2(1-t) of the lower Frechet bound W; canonical non-strict case."""

    def phi(t):
        return 2.0 * (1.0 - np.asarray(t, dtype=float))

    def dplus(t):
        return np.full_like(np.asarray(t, dtype=float), -2.0)

    def inverse(s):
        s = np.asarray(s, dtype=float)
        return np.clip(1.0 - s / 2.0, 0.0, 1.0)

    return make_generator(phi, dplus, 2.0, "w", inverse)


def pseudo_inverse(g: Generator, s):
    """phi^-(s): the inverse of phi for s < phi(0+), zero beyond."""
    return g.inverse(s)


def level_function(g: Generator, t, x):
    """t-level function f^t(x) = phi^-(phi(t) - phi(x)) on t <= x <= 1."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(x < t - 1e-12):
        raise ValueError("level function requires x >= t")
    with np.errstate(invalid="ignore"):
        phit = np.where(t > 0, g.phi(np.maximum(t, 1e-300)), g.phi_at_zero)
    s = phit - g.phi(np.maximum(x, 1e-300))
    if np.isinf(g.phi_at_zero):
        s = np.where(np.isinf(phit), np.inf, s)
    return g.inverse(np.maximum(s, 0.0))


def archimedean_copula(g: Generator) -> CopulaModel:
    """Copula phi^-(phi(x) + phi(y)) with the strict / non-strict Markov kernel."""

    def cdf(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            px = g.phi(np.maximum(x, 1e-300))
            py = g.phi(np.maximum(y, 1e-300))
        # guard underflow near (1,1): tiny phi values act as exact zero
        px = np.where(px < 1e-300, 0.0, px)
        py = np.where(py < 1e-300, 0.0, py)
        out = g.inverse(px + py)
        out = np.where((x <= 0.0) | (y <= 0.0), 0.0, out)
        return np.minimum(out, np.minimum(np.maximum(x, 0), np.maximum(y, 0)))

    def kernel_cdf(x, y):
        x, y = np.broadcast_arrays(
            np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        )
        C = cdf(x, y)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            num = g.dplus_phi(np.clip(x, 1e-300, 1.0))
            den = g.dplus_phi(np.clip(C, 1e-300, 1.0))
            ratio = num / den
        ratio = np.where(np.isfinite(ratio), ratio, 0.0)
        out = np.clip(ratio, 0.0, 1.0)
        if not g.strict:
            f0 = level_function(g, np.zeros_like(x), x)
            out = np.where(y < f0, 0.0, out)
        out = np.where(y >= 1.0, 1.0, out)
        return np.where((x <= 0.0) | (x >= 1.0), 1.0, out)

    model = CopulaModel(
        cdf=cdf,
        kernel_cdf=kernel_cdf,
        label=f"archimedean[{g.label}]",
    )
    # archimedean copulas are symmetric
    object.__setattr__(model, "transpose_factory", lambda: model)
    return model


def kendall_function(g: Generator) -> KendallFunction:
    """Kendall distribution function F(x) = x - phi(x)/D+phi(x)."""

    def eval(x):
        x = np.asarray(x, dtype=float)
        xs = np.clip(x, 1e-12, 1.0 - 1e-15)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            ratio = g.phi(xs) / g.dplus_phi(xs)
        ratio = np.where(np.isfinite(ratio), ratio, 0.0)
        out = np.clip(xs - ratio, 0.0, 1.0)
        return np.where(x >= 1.0, 1.0, out)

    return KendallFunction(eval=eval)
