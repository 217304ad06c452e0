"""Gauss-Legendre rules, composite panel rules and refinement.

Integrands in this package have kinks or fractional-power zeros at known
points (nodes of radial functions, zeros of Gegenbauer factors, the origin).
Those points are made panel boundaries and every panel uses a cubic
end-clustering substitution, which turns an ``|x - a|^p`` endpoint
singularity into ``v^(2p + 1)`` and restores fast convergence.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import legendre_rule


class NonConvergenceError(ArithmeticError):
    """Refinement did not reach the requested tolerance."""


RADIAL_TRANSFORMS = ("rational", "exponential")
METHODS = ("closed_form", "quadrature_1d", "quadrature_tensor", "monte_carlo")


@dataclass(frozen=True)
class QuadratureSpec:
    base_order: int = 96
    max_refinements: int = 8
    rel_tol: float = 1e-10
    radial_transform: str = "rational"

    def __post_init__(self):
        if self.base_order < 2:
            raise ValueError("base_order must be >= 2")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")
        if self.radial_transform not in RADIAL_TRANSFORMS:
            raise ValueError(f"radial_transform must be one of {RADIAL_TRANSFORMS}")


@dataclass(frozen=True)
class EntropyValue:
    lam: float
    value: float
    method: str
    est_error: float

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not math.isfinite(self.est_error) or self.est_error < 0:
            raise ValueError("est_error must be finite and nonnegative")


@functools.lru_cache(maxsize=64)
def _cached_rule(n: int):
    x, w = legendre_rule(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if int(n) != n or n < 1:
        raise ValueError(f"rule size must be a positive integer, got {n}")
    x, w = _cached_rule(int(n))
    return x.copy(), w.copy()


def _clustered_unit_rule(order: int):
    """Rule on [0, 1] after the substitution x = 3v^2 - 2v^3."""
    u, w = _cached_rule(order)
    v = 0.5 * (u + 1.0)
    x = v * v * (3.0 - 2.0 * v)
    wx = 0.5 * w * 6.0 * v * (1.0 - v)
    return x, wx


def panel_rule(breaks, order: int, cluster: bool = True):
    """Composite rule on [breaks[0], breaks[-1]] with one panel per gap."""
    b = np.asarray(breaks, dtype=float)
    if cluster:
        x01, w01 = _clustered_unit_rule(order)
    else:
        u, w = _cached_rule(order)
        x01, w01 = 0.5 * (u + 1.0), 0.5 * w
    lo, hi = b[:-1], b[1:]
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    width = (hi - lo)[:, None]
    x = (lo[:, None] + width * x01[None, :]).ravel()
    w = (width * w01[None, :]).ravel()
    return x, w


def half_line_rule(breaks, order: int, scale: float = 1.0, transform: str = "rational"):
    """Composite rule on [0, inf) with panel boundaries at ``breaks`` (r > 0).

    The half line is mapped from t in [0, 1) by r = s t / (1 - t) (rational)
    or r = -s ln(1 - t) (exponential). Nodes that round to t = 1 are dropped.
    """
    b = np.asarray(sorted(r for r in breaks if r > 0), dtype=float)
    if transform == "rational":
        tb = b / (scale + b)
    elif transform == "exponential":
        tb = -np.expm1(-b / scale)
    else:
        raise ValueError(f"unknown radial transform {transform!r}")
    t, wt = panel_rule(np.concatenate([[0.0], tb, [1.0]]), order)
    keep = t < 1.0
    t, wt = t[keep], wt[keep]
    if transform == "rational":
        r = scale * t / (1.0 - t)
        jac = scale / (1.0 - t) ** 2
    else:
        r = -scale * np.log1p(-t)
        jac = scale / (1.0 - t)
    return r, wt * jac


def refine(evaluate, spec: QuadratureSpec, atol: float = 1e-12):
    """Evaluate ``evaluate(order)`` at doubling orders until two levels agree.

    Returns ``(value, est_error)`` where est_error is the absolute difference
    of the last two levels.
    """
    order = spec.base_order
    prev = evaluate(order)
    for _ in range(spec.max_refinements):
        order *= 2
        cur = evaluate(order)
        err = abs(cur - prev)
        if not math.isfinite(cur):
            raise NonConvergenceError("integral is not finite")
        if err <= spec.rel_tol * abs(cur) + atol:
            return cur, err
        prev = cur
    raise NonConvergenceError(
        f"no convergence after {spec.max_refinements} refinements (last change {err:.3e})"
    )


def xlogx(p):
    """p ln p with 0 ln 0 = 0."""
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)


def entropy_sums(density, weights, lam: float):
    """Partial sums (mass, term, power) for :func:`entropy_from_sums`.

    For lam == 1, term is -sum w rho ln rho. Otherwise power is sum w rho^lam
    and term is the same integral minus the mass, written with expm1 so it
    keeps full relative accuracy when lam is close to 1. Sums from several
    grids may be added before conversion.
    """
    rho = np.asarray(density, dtype=float)
    w = np.asarray(weights, dtype=float)
    pos = rho > 0
    safe = np.where(pos, rho, 1.0)
    mass = float(np.sum(np.where(pos, w * rho, 0.0)))
    if lam == 1.0:
        return np.array([mass, float(-np.sum(w * xlogx(rho))), mass])
    log_rho = np.log(safe)
    with np.errstate(over="ignore"):
        excess = np.where(pos, rho * np.expm1((lam - 1.0) * log_rho), 0.0)
        power = np.where(pos, np.exp(lam * log_rho), 0.0)
    return np.array([mass, float(np.sum(w * excess)), float(np.sum(w * power))])


def entropy_from_sums(sums, lam: float) -> float:
    """Renyi (or Shannon) entropy of the density normalized by its quadrature mass."""
    mass, term, power = (float(v) for v in sums)
    if not mass > 0:
        raise NonConvergenceError("density has no mass on the grid")
    if lam == 1.0:
        return term / mass + math.log(mass)
    if not (power > 0 and math.isfinite(power)):
        raise NonConvergenceError("power integral is not finite and positive")
    ratio = term / mass
    if abs(ratio) < 0.5:
        return math.log(mass) + math.log1p(ratio) / (1.0 - lam)
    return (math.log(power) - lam * math.log(mass)) / (1.0 - lam)


def entropy_on_grid(density, weights, lam: float) -> float:
    return entropy_from_sums(entropy_sums(density, weights, lam), lam)
