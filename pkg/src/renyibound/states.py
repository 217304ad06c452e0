"""Radial eigenfunctions of exactly solvable central potentials.

Atomic units throughout (hbar = m = 1, oscillator frequency 1, nuclear
charge 1). Every constructor renormalizes numerically so that
``int R(r)^2 r^(d-1) dr = 1`` regardless of the analytic prefactor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import quadrature as quad
from .special import DomainError, laguerre, laguerre_roots


class StateFormatError(DomainError):
    """Malformed tabulated radial data."""


class NormalizationError(DomainError):
    """Radial function with zero or non-finite norm."""


class MomentMismatchError(ArithmeticError):
    """Quadrature and analytic <r^2> disagree."""


_NORM_SPEC = quad.QuadratureSpec(base_order=64, rel_tol=1e-14)


@dataclass(frozen=True)
class SystemLabel:
    system: str
    quantum_numbers: tuple = ()
    potential: str = ""

    def __str__(self):
        if not self.quantum_numbers:
            return self.system
        return f"{self.system}({','.join(str(q) for q in self.quantum_numbers)})"


@dataclass(frozen=True)
class RadialState:
    """Normalized radial amplitude R(r) of a d-dimensional central-field state.

    ``breaks`` are radii where the amplitude has a zero or a kink, or where
    its decay changes character; they become panel boundaries for quadrature. ``scale`` is a characteristic length for
    the half-line map. Tabulated states have finite ``support``.
    """

    d: int
    l: int
    amplitude: Callable = field(repr=False)
    label: SystemLabel = SystemLabel("custom")
    r2_analytic: float | None = None
    breaks: tuple = ()
    scale: float = 1.0
    support: float = math.inf

    def __call__(self, r):
        return self.amplitude(r)

    def radial_density(self, r):
        """R(r)^2 r^(d-1): the probability density of r."""
        r = np.asarray(r, dtype=float)
        return self.amplitude(r) ** 2 * r ** (self.d - 1)

    def rule(self, order: int, transform: str = "rational"):
        """Quadrature nodes and weights in r adapted to this state."""
        if math.isfinite(self.support):
            # piecewise-cubic interpolant: plain Gauss per sample interval, exact
            # for R^2 r^(d+1) (degree d + 7) at the smallest size
            per_panel = max(self.d // 2 + 4, order // 16)
            return quad.panel_rule(self.breaks, per_panel, cluster=False)
        return quad.half_line_rule(self.breaks, order, self.scale, transform)


def _radial_moment(amplitude, d, breaks, scale, support, power: int, spec=_NORM_SPEC):
    probe = RadialState(d, 0, amplitude, breaks=breaks, scale=scale, support=support)

    def at(order):
        r, w = probe.rule(order, spec.radial_transform)
        return float(np.sum(w * amplitude(r) ** 2 * r ** (d - 1 + power)))

    return quad.refine(at, spec, atol=0.0)[0]


def _normalized(amplitude, d, breaks, scale, support=math.inf):
    norm = _radial_moment(amplitude, d, breaks, scale, support, 0)
    if not (math.isfinite(norm) and norm > 0):
        raise NormalizationError(f"radial norm is {norm}")
    c = 1.0 / math.sqrt(norm)
    return lambda r: c * amplitude(np.asarray(r, dtype=float))


def oscillator_state(n_r: int, l: int, d: int) -> RadialState:
    """Isotropic harmonic oscillator, V(r) = r^2/2, energy 2 n_r + l + d/2."""
    if n_r < 0 or l < 0 or d < 1:
        raise DomainError("oscillator needs n_r >= 0, l >= 0, d >= 1")
    alpha = l + 0.5 * d - 1.0
    log_c = 0.5 * (math.log(2.0) + math.lgamma(n_r + 1.0) - math.lgamma(n_r + l + 0.5 * d))

    def raw(r):
        r = np.asarray(r, dtype=float)
        return math.exp(log_c) * r**l * laguerre(n_r, alpha, r * r) * np.exp(-0.5 * r * r)

    # nodes, plus the classical turning point and twice it so the Gaussian
    # tail gets its own panels under the rational map
    turn = math.sqrt(2.0 * (2.0 * n_r + l + 0.5 * d))
    breaks = tuple(sorted([*np.sqrt(laguerre_roots(n_r, alpha)), turn, 2.0 * turn]))
    return RadialState(
        d=d,
        l=l,
        amplitude=_normalized(raw, d, breaks, 1.0),
        label=SystemLabel("oscillator", (n_r, l), "V(r) = r^2/2"),
        r2_analytic=2.0 * n_r + l + 0.5 * d,
        breaks=breaks,
        scale=1.0,
    )


def hydrogen_state(n: int, l: int, d: int = 3) -> RadialState:
    """Hydrogenic bound state, V(r) = -1/r, with nu = n + (d - 3)/2."""
    if d < 2:
        raise DomainError("hydrogen states need d >= 2")
    if n < 1 or l < 0:
        raise DomainError("hydrogen needs n >= 1, l >= 0")
    if l >= n:
        raise DomainError(f"hydrogen needs l < n, got n={n}, l={l}")
    nu = n + 0.5 * (d - 3)
    k = n - l - 1
    alpha = 2.0 * l + d - 2.0
    log_c = 0.5 * (
        d * math.log(2.0 / nu) + math.lgamma(k + 1.0) - math.log(2.0 * nu) - math.lgamma(k + alpha + 1.0)
    )

    def raw(r):
        x = 2.0 * np.asarray(r, dtype=float) / nu
        return math.exp(log_c) * x**l * laguerre(k, alpha, x) * np.exp(-0.5 * x)

    breaks = tuple(0.5 * nu * laguerre_roots(k, alpha))
    r2 = None
    if d == 3:
        r2 = 0.5 * n * n * (5.0 * n * n + 1.0 - 3.0 * l * (l + 1.0))
    return RadialState(
        d=d,
        l=l,
        amplitude=_normalized(raw, d, breaks, nu * nu),
        label=SystemLabel("hydrogen", (n, l), "V(r) = -1/r"),
        r2_analytic=r2,
        breaks=breaks,
        scale=nu * nu,
    )


def tabulated_state(samples, d: int, l: int, name: str = "file") -> RadialState:
    """Radial state from (r, R) samples via a monotone cubic interpolant.

    The amplitude is zero outside the sampled range.
    """
    from scipy.interpolate import PchipInterpolator

    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise StateFormatError("samples must be (r, R) pairs")
    if arr.shape[0] < 8:
        raise StateFormatError(f"need at least 8 samples, got {arr.shape[0]}")
    r, amp = arr[:, 0], arr[:, 1]
    if not np.all(np.isfinite(arr)):
        raise StateFormatError("samples must be finite")
    if r[0] < 0:
        raise StateFormatError("radii must be nonnegative")
    if np.any(np.diff(r) <= 0):
        raise StateFormatError("radii must be strictly increasing")
    interp = PchipInterpolator(r, amp, extrapolate=False)
    lo, hi = float(r[0]), float(r[-1])

    def raw(x):
        x = np.asarray(x, dtype=float)
        v = interp(x)
        return np.where((x >= lo) & (x <= hi), np.nan_to_num(v), 0.0)

    breaks = tuple(float(v) for v in r)
    amplitude = _normalized(raw, d, breaks, 1.0, support=hi)
    return RadialState(
        d=d,
        l=l,
        amplitude=amplitude,
        label=SystemLabel(name, (), "tabulated"),
        breaks=breaks,
        scale=max(hi / 4.0, 1e-12),
        support=hi,
    )


def read_tabulated(path, d: int, l: int) -> RadialState:
    """Load a two-column (r, R) table. '#' starts a comment; commas or
    whitespace separate columns."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise StateFormatError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise StateFormatError(f"{path}:{lineno}: {exc}") from None
    return tabulated_state(rows, d, l, name=Path(path).name)


def r2_expectation(state: RadialState, spec: quad.QuadratureSpec | None = None) -> float:
    """<r^2> = int r^2 R^2 r^(d-1) dr by quadrature, checked against the analytic value."""
    spec = spec or _NORM_SPEC
    val = _radial_moment(state.amplitude, state.d, state.breaks, state.scale, state.support, 2, spec)
    if not (math.isfinite(val) and val > 0):
        raise quad.NonConvergenceError(f"<r^2> quadrature gave {val}")
    if state.r2_analytic is not None and abs(val - state.r2_analytic) > 1e-8 * max(1.0, state.r2_analytic):
        raise MomentMismatchError(f"<r^2>: quadrature {val!r} vs analytic {state.r2_analytic!r}")
    return val
