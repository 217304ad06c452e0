"""Maximum-entropy bounds under a second-moment constraint.

``bd_lambda`` gives the largest Renyi entropy of order ``lam`` attainable by a
d-dimensional density with identity covariance. The extremal densities are
the Student-r family (lam > 1), the Gaussian (lam = 1) and the Student-t
family (d/(d+2) < lam < 1); :func:`extremal_renyi` integrates them
numerically and serves as an independent check on the closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .special import DomainError


class BoundUndefinedError(DomainError):
    """Renyi order at or below d/(d+2): entropy is unbounded at fixed covariance."""


@dataclass(frozen=True)
class RenyiOrder:
    lam: float
    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.d}")
        if not self.lam > 0:
            raise DomainError(f"Renyi order must be positive, got {self.lam}")

    @property
    def threshold(self) -> float:
        return self.d / (self.d + 2.0)

    def check_bounded(self):
        if not self.lam > self.threshold:
            raise BoundUndefinedError(
                f"bound undefined for lambda={self.lam} <= d/(d+2)={self.threshold:.6g} (d={self.d})"
            )
        return self


def _order(order_or_d, lam=None) -> RenyiOrder:
    if isinstance(order_or_d, RenyiOrder):
        return order_or_d
    return RenyiOrder(float(lam), int(order_or_d))


def _bd(order: RenyiOrder, power_exponent_sign: float) -> float:
    d, lam = order.d, order.lam
    if lam == 1.0:
        return 0.5 * d * math.log(2.0 * math.pi * math.e)
    q = (d + 2.0) * lam - d
    if lam > 1.0:
        return (
            0.5 * d * math.log(math.pi * q / (lam - 1.0))
            + power_exponent_sign / (lam - 1.0) * math.log(q / (2.0 * lam))
            + math.lgamma(lam / (lam - 1.0))
            - math.lgamma(q / (2.0 * (lam - 1.0)))
        )
    return (
        0.5 * d * math.log(math.pi * q / (1.0 - lam))
        - lam / (1.0 - lam) * math.log(q / (2.0 * lam))
        - math.lgamma(lam / (1.0 - lam))
        + math.lgamma(q / (2.0 * (1.0 - lam)))
    )


def bd_lambda(order_or_d, lam=None) -> float:
    """Maxent constant B_d(lam) in nats.

    Accepts a :class:`RenyiOrder` or ``(d, lam)``. For lam > 1 the power term
    carries the exponent 1/(lam - 1); see :func:`bd_lambda_flipped` for the
    opposite sign.
    """
    order = _order(order_or_d, lam).check_bounded()
    return _bd(order, +1.0)


def bd_lambda_flipped(order_or_d, lam=None) -> float:
    """B_d(lam) with the power-term exponent 1/(1 - lam) on the lam > 1 branch.

    This variant is not a valid bound (it undercuts the Gaussian at d=1,
    lam=2); it is reported only for comparison.
    """
    order = _order(order_or_d, lam).check_bounded()
    return _bd(order, -1.0)


def shannon_bound(d: int, r2: float) -> float:
    if not r2 > 0:
        raise DomainError(f"<r^2> must be positive, got {r2}")
    return 0.5 * d * math.log(2.0 * math.pi * math.e * r2 / d)


def baseline_renyi_bound(order_or_d, r2: float, lam=None) -> float:
    """B_d(lam) + (d/2) ln(<r^2>/d).

    Called as ``baseline_renyi_bound(order, r2)`` or
    ``baseline_renyi_bound(d, r2, lam)``.
    """
    order = _order(order_or_d, lam)
    if not r2 > 0:
        raise DomainError(f"<r^2> must be positive, got {r2}")
    return bd_lambda(order) + 0.5 * order.d * math.log(r2 / order.d)


def gaussian_renyi(order_or_d, lam=None) -> float:
    """Renyi entropy of the standard d-dimensional Gaussian."""
    order = _order(order_or_d, lam)
    d, lam = order.d, order.lam
    if lam == 1.0:
        return 0.5 * d * math.log(2.0 * math.pi * math.e)
    return 0.5 * d * math.log(2.0 * math.pi) + 0.5 * d * math.log(lam) / (lam - 1.0)


def log_sphere_area(d: int) -> float:
    """ln of the (d-1)-sphere area 2 pi^(d/2) / Gamma(d/2)."""
    return math.log(2.0) + 0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d)


@dataclass(frozen=True)
class ExtremalDensity:
    """Radially symmetric maximizer of the Renyi entropy at identity covariance.

    ``shape`` is the exponent of the radial profile and ``scale`` its radius:
    student_r is A (1 - r^2/scale^2)_+^shape, student_t is
    A (1 + r^2/scale^2)^(-shape), gaussian is A exp(-r^2/2).
    """

    kind: str
    d: int
    shape: float
    scale: float
    log_amplitude: float

    def pdf(self, r):
        r = np.asarray(r, dtype=float)
        u = (r / self.scale) ** 2
        if self.kind == "gaussian":
            return np.exp(self.log_amplitude - 0.5 * r * r)
        if self.kind == "student_t":
            return np.exp(self.log_amplitude - self.shape * np.log1p(u))
        inside = np.clip(1.0 - u, 0.0, None)
        with np.errstate(divide="ignore"):
            return np.where(u < 1.0, np.exp(self.log_amplitude + self.shape * np.log(inside)), 0.0)

    @property
    def support(self) -> float:
        return self.scale if self.kind == "student_r" else math.inf


def extremal_density(order_or_d, lam=None) -> ExtremalDensity:
    order = _order(order_or_d, lam).check_bounded()
    d, lam = order.d, order.lam
    if lam == 1.0:
        return ExtremalDensity("gaussian", d, 0.0, 1.0, -0.5 * d * math.log(2.0 * math.pi))
    q = (d + 2.0) * lam - d
    half_d = 0.5 * d
    if lam > 1.0:
        p = 1.0 / (lam - 1.0)
        a2 = q / (lam - 1.0)
        log_beta = math.lgamma(half_d) + math.lgamma(p + 1.0) - math.lgamma(half_d + p + 1.0)
        log_mass = log_sphere_area(d) + half_d * math.log(a2) - math.log(2.0) + log_beta
        return ExtremalDensity("student_r", d, p, math.sqrt(a2), -log_mass)
    s = 1.0 / (1.0 - lam)
    c2 = q / (1.0 - lam)
    log_beta = math.lgamma(half_d) + math.lgamma(s - half_d) - math.lgamma(s)
    log_mass = log_sphere_area(d) + half_d * math.log(c2) - math.log(2.0) + log_beta
    return ExtremalDensity("student_t", d, s, math.sqrt(c2), -log_mass)


def _radial_integral(density: ExtremalDensity, profile_power: float, moment: int = 0) -> float:
    """Integral over R^d of r^moment * rho^profile_power, by QUADPACK.

    The amplitude is factored out so the routine integrates the bare profile.
    """
    d = density.d
    k = d - 1 + moment
    if density.kind == "student_r":
        a = density.scale
        e = density.shape * profile_power
        # (1 - r/a)^e is passed as the algebraic endpoint weight
        val, _ = integrate.quad(
            lambda r: r**k * (1.0 + r / a) ** e,
            0.0, a, weight="alg", wvar=(0.0, e), epsabs=0.0, epsrel=1e-13, limit=200,
        )
        val *= a ** (-e)
    elif density.kind == "student_t":
        c = density.scale
        e = density.shape * profile_power
        val, _ = integrate.quad(
            lambda r: r**k * (1.0 + (r / c) ** 2) ** (-e),
            0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=400,
        )
    else:
        val, _ = integrate.quad(
            lambda r: r**k * math.exp(-0.5 * profile_power * r * r),
            0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=200,
        )
    return math.exp(log_sphere_area(d) + profile_power * density.log_amplitude) * val


def extremal_second_moment(density: ExtremalDensity) -> float:
    """Per-coordinate variance <x_i^2> = <r^2>/d, by radial quadrature."""
    return _radial_integral(density, 1.0, moment=2) / density.d


def extremal_renyi(order_or_d, lam=None) -> float:
    """Renyi entropy of the extremal density, computed by radial quadrature."""
    order = _order(order_or_d, lam)
    density = extremal_density(order)
    if order.lam != 1.0:
        return math.log(_radial_integral(density, order.lam)) / (1.0 - order.lam)
    d = order.d
    log_a = density.log_amplitude
    val, _ = integrate.quad(
        lambda r: r ** (d - 1) * math.exp(-0.5 * r * r) * (0.5 * r * r - log_a),
        0.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=200,
    )
    return math.exp(log_sphere_area(d) + log_a) * val
