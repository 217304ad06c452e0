"""Inverse-CDF sampling of separable states and covariance estimation.

Random streams: ``numpy.random.Generator(PCG64(SeedSequence(seed)))``. A
given seed yields the same points on every platform for a fixed numpy
version. Each coordinate (r, theta_1, ..., theta_{d-1}) draws from its own
child stream spawned from the seed, so adding coordinates or changing
``count`` never reshuffles the others' prefixes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from . import angular
from .angular import QuantumNumberChain
from .special import DomainError
from .states import RadialState

CDF_GRID = 1 << 15


@dataclass(frozen=True)
class TabulatedCDF:
    """Monotone piecewise-linear CDF; ``sample`` inverts it by interpolation."""

    x: np.ndarray
    cdf: np.ndarray

    @classmethod
    def from_density(cls, x, density):
        c = cumulative_trapezoid(density, x, initial=0.0)
        if not c[-1] > 0:
            raise DomainError("density has zero mass on the grid")
        c = np.maximum.accumulate(c / c[-1])
        return cls(np.asarray(x), c)

    def __call__(self, x):
        return np.interp(x, self.x, self.cdf)

    def sample(self, u):
        return np.interp(u, self.cdf, self.x)


def radial_cdf(state: RadialState, grid: int = CDF_GRID) -> TabulatedCDF:
    if math.isfinite(state.support):
        r = np.linspace(0.0, state.support, grid)
    else:
        t = np.linspace(0.0, 1.0, grid + 1)[:-1]
        r = state.scale * t / (1.0 - t)
        # close the grid far in the tail where the density is negligible
        r = np.append(r, r[-1] * 2.0)
    return TabulatedCDF.from_density(r, state.radial_density(r))


def polar_cdf(chain: QuantumNumberChain, j: int, grid: int = CDF_GRID) -> TabulatedCDF:
    t = np.linspace(0.0, math.pi, grid)
    return TabulatedCDF.from_density(t, angular.polar_marginal(chain, j, t))


def sample_state(state: RadialState, chain: QuantumNumberChain, count: int, seed: int = 0) -> np.ndarray:
    """Draw ``count`` i.i.d. Cartesian points from R(r)^2 |Y(Omega)|^2."""
    if state.d != chain.d:
        raise DomainError(f"state has d={state.d} but chain has d={chain.d}")
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count}")
    d = chain.d
    streams = [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(d)]
    r = radial_cdf(state).sample(streams[0].random(count))
    angles = np.empty((count, d - 1))
    for j in range(1, d - 1):
        angles[:, j - 1] = polar_cdf(chain, j).sample(streams[j].random(count))
    angles[:, d - 2] = 2.0 * math.pi * streams[d - 1].random(count)
    return angular.angles_to_cartesian(r, angles)


@dataclass(frozen=True)
class CovarianceEstimate:
    second_moment: np.ndarray  # <x x^t> about the origin
    correlation: np.ndarray  # second_moment / trace
    count: int

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.correlation).copy()

    @property
    def max_off_diagonal(self) -> float:
        c = self.correlation
        return float(np.max(np.abs(c - np.diag(np.diag(c))))) if c.shape[0] > 1 else 0.0


def empirical_covariance(points) -> CovarianceEstimate:
    """Second-moment matrix about the origin (states are centered) and its
    trace-normalized form."""
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise DomainError("need at least two points in an (N, d) array")
    m = x.T @ x / x.shape[0]
    return CovarianceEstimate(m, m / np.trace(m), x.shape[0])
