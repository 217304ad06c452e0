"""Scalar special functions: log-gamma, Gegenbauer and Laguerre polynomials,
and the Gegenbauer normalization constant.

All gamma ratios are formed as log-gamma differences so that large degrees or
dimensions do not overflow. The polynomial evaluators accept scalars or
arrays; arrays go through the recurrence kernels in :mod:`renyibound._kernels`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """Argument outside the domain of a function."""


@dataclass(frozen=True)
class PolyIndex:
    """Degree ``n`` and Gegenbauer parameter ``lam`` of ``C_n^lam``."""

    n: int
    lam: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.n}")
        if self.lam < 0:
            raise DomainError(f"Gegenbauer parameter must be >= 0, got {self.lam}")


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _as_index(idx, lam=None) -> PolyIndex:
    if isinstance(idx, PolyIndex):
        return idx
    return PolyIndex(int(idx), float(lam))


def gegenbauer(idx, x, lam=None):
    """Evaluate C_n^lam(x) by the three-term recurrence.

    ``idx`` is a :class:`PolyIndex`, or the degree with ``lam`` given separately.
    lam = 0 with n >= 1 is rejected: that normalization is degenerate and the
    azimuthal factor is handled elsewhere as a uniform angle.
    """
    idx = _as_index(idx, lam)
    if idx.lam == 0 and idx.n >= 1:
        raise DomainError("C_n^0 is degenerate for n >= 1")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + 1e-12):
        raise DomainError("gegenbauer argument must lie in [-1, 1]")
    out = _kernels.gegenbauer_array(idx.n, idx.lam, xa)
    return float(out) if np.ndim(x) == 0 else out


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x)."""
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n}")
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    xa = np.asarray(x, dtype=float)
    out = _kernels.laguerre_array(int(n), float(alpha), xa)
    return float(out) if np.ndim(x) == 0 else out


def log_gegenbauer_norm(idx, lam=None) -> float:
    idx = _as_index(idx, lam)
    n, la = idx.n, idx.lam
    if not la > 0:
        raise DomainError("gegenbauer_norm requires lam > 0")
    return (
        math.log(math.pi)
        + (1.0 - 2.0 * la) * math.log(2.0)
        + math.lgamma(n + 2.0 * la)
        - math.log(la + n)
        - math.lgamma(n + 1.0)
        - 2.0 * math.lgamma(la)
    )


def gegenbauer_norm(idx, lam=None) -> float:
    """Z(lam, n) = integral over [0, pi] of (C_n^lam(cos t) sin^lam t)^2 dt."""
    return math.exp(log_gegenbauer_norm(idx, lam))


def gegenbauer_roots(idx, lam=None) -> np.ndarray:
    """Zeros of C_n^lam on (-1, 1), ascending."""
    from scipy.special import roots_gegenbauer

    idx = _as_index(idx, lam)
    if idx.n == 0:
        return np.empty(0)
    return np.sort(roots_gegenbauer(idx.n, idx.lam)[0])


def laguerre_roots(n: int, alpha: float) -> np.ndarray:
    """Zeros of L_n^(alpha) on (0, inf), ascending."""
    from scipy.special import roots_genlaguerre

    if n == 0:
        return np.empty(0)
    return np.sort(roots_genlaguerre(int(n), float(alpha))[0])
