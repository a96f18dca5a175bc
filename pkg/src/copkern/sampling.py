"""Seeded sampling from any copula model via conditional-distribution inversion."""

from dataclasses import dataclass

import numpy as np

from .core import CopulaModel


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        # PCG64 seeded through SeedSequence(seed, stream): the pair fully
        # determines the output sequence
        return np.random.default_rng(np.random.SeedSequence([self.seed, self.stream]))


@dataclass(frozen=True)
class SampleSet:
    x: np.ndarray
    y: np.ndarray
    seed: int = 0
    stream: int = 0

    @property
    def n(self) -> int:
        return len(self.x)


def conditional_inverse(c: CopulaModel, x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Generalized inverse inf{y : K(x,[0,y]) >= u} by monotone bisection.

    60 bisection steps resolve y far below double precision; the inf
    convention lands on atoms and flat segments uniformly for all families.
    """
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        k = np.asarray(c.kernel_cdf(x, mid))
        reached = k >= u
        hi = np.where(reached, mid, hi)
        lo = np.where(reached, lo, mid)
    return hi


def sample(c: CopulaModel, n: int, rng: RngSpec) -> SampleSet:
    """Draw n pairs with uniform margins from the copula `c`."""
    if n < 1:
        raise ValueError("sample size must be >= 1")
    gen = rng.generator()
    x = gen.random(n)
    u = gen.random(n)
    y = conditional_inverse(c, x, u)
    return SampleSet(x=x, y=y, seed=rng.seed, stream=rng.stream)


def sample_fidelity(c: CopulaModel, n: int, rng: RngSpec, grid: int = 50) -> float:
    """Sup distance on a lattice between the sample's empirical copula and `c`."""
    s = sample(c, n, rng)
    from .estimation import pseudo_obs

    p = pseudo_obs(s)
    edges = np.linspace(0.0, 1.0, grid + 1)
    hist, _, _ = np.histogram2d(p.u, p.v, bins=[edges, edges])
    emp = np.zeros((grid + 1, grid + 1))
    emp[1:, 1:] = np.cumsum(np.cumsum(hist, axis=0), axis=1) / n
    true = np.asarray(c.cdf(edges[:, None], edges[None, :]))
    return float(np.max(np.abs(emp - true)))
