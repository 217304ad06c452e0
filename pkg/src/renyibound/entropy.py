"""Renyi and Shannon entropies of separable densities rho = R(r)^2 |Y(Omega)|^2.

``renyi_total`` uses the factorization of the power integral into a radial
and an angular part. ``renyi_total_tensor`` ignores it and integrates the full
density on a tensor grid in (r, theta_1, ..., theta_{d-1}); it is the
independent check of the split and is limited to d <= 4.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import angular
from . import quadrature as quad
from .angular import QuantumNumberChain
from .special import DomainError
from .states import RadialState


class UnsupportedDimensionError(DomainError):
    pass


TENSOR_MAX_D = 4
TENSOR_ORDER = 24


def _check_order(lam):
    if not lam > 0:
        raise DomainError(f"Renyi order must be positive, got {lam}")


def _check_pair(state: RadialState, chain: QuantumNumberChain):
    if state.d != chain.d:
        raise DomainError(f"state has d={state.d} but chain has d={chain.d}")
    if state.l != chain.l:
        raise DomainError(f"state has l={state.l} but chain has mu_1={chain.mu[0]}")


def _radial_entropy_at(state: RadialState, lam: float, order: int, transform: str) -> float:
    r, w = state.rule(order, transform)
    p = state(r) ** 2
    w = w * r ** (state.d - 1)
    return quad.entropy_on_grid(p, w, lam)


def renyi_radial(state: RadialState, lam: float, spec: quad.QuadratureSpec | None = None) -> quad.EntropyValue:
    """Radial part (1/(1-lam)) ln int R^(2 lam) r^(d-1) dr, or its Shannon limit."""
    _check_order(lam)
    spec = spec or quad.QuadratureSpec()
    value, err = quad.refine(lambda o: _radial_entropy_at(state, lam, o, spec.radial_transform), spec)
    return quad.EntropyValue(lam, value, "quadrature_1d", err)


def renyi_total(
    state: RadialState, chain: QuantumNumberChain, lam: float, spec: quad.QuadratureSpec | None = None
) -> quad.EntropyValue:
    """H_lam of the full density as radial plus angular entropy."""
    _check_pair(state, chain)
    spec = spec or quad.QuadratureSpec()
    rad = renyi_radial(state, lam, spec)
    ang, ang_err = angular.angular_renyi_value(chain, lam, spec)
    return quad.EntropyValue(lam, rad.value + ang, "quadrature_1d", rad.est_error + ang_err)


def _angle_grid(chain: QuantumNumberChain, order: int, azimuth_nodes: int):
    """Tensor grid over the sphere: (angles, surface weights)."""
    d = chain.d
    axes, weights = [], []
    for j in range(1, d - 1):
        t, w = quad.panel_rule(angular.polar_breaks(chain, j), order)
        axes.append(t)
        weights.append(w * np.sin(t) ** (d - 1 - j))
    m = azimuth_nodes
    axes.append(2.0 * math.pi * (np.arange(m) + 0.5) / m)
    weights.append(np.full(m, 2.0 * math.pi / m))
    mesh = np.meshgrid(*axes, indexing="ij")
    angles = np.stack([g.ravel() for g in mesh], axis=-1)
    wmesh = np.meshgrid(*weights, indexing="ij")
    w = np.prod(np.stack([g.ravel() for g in wmesh], axis=-1), axis=-1)
    return angles, w


def _tensor_entropy_at(state, chain, lam, order, scales, transform):
    """Entropy of the density stretched by diag(scales), on one tensor grid."""
    d = chain.d
    scales = np.asarray(scales, dtype=float)
    stretched = not np.all(scales == 1.0)
    # the azimuth enters only through the stretch; otherwise a few nodes are exact
    angles, wa = _angle_grid(chain, order, 2 * order if stretched else 4)
    omega = angular.angles_to_cartesian(np.ones(len(angles)), angles)
    back = omega / scales
    stretch, back_angles = angular.cartesian_to_angles(back)
    y2 = angular.angular_density(chain, back_angles)
    log_det = float(np.sum(np.log(scales)))

    if stretched:
        rule_state = dataclasses.replace(state, breaks=(), scale=state.scale * float(scales.max()))
    else:
        rule_state = state
    r, wr = rule_state.rule(order, transform)
    wr = wr * r ** (d - 1)

    sums = np.zeros(3)
    chunk = max(1, 4_000_000 // max(1, len(angles)))
    for start in range(0, len(r), chunk):
        rs = r[start:start + chunk]
        if stretched:
            radial = state(rs[:, None] * stretch[None, :]) ** 2
        else:
            radial = (state(rs) ** 2)[:, None]
        f = radial * y2[None, :] * math.exp(-log_det)
        wgrid = wr[start:start + chunk, None] * wa[None, :]
        sums += quad.entropy_sums(f, wgrid, lam)
    return quad.entropy_from_sums(sums, lam)


def _tensor_entropy(state, chain, lam, scales, spec, order):
    d = chain.d
    if d > TENSOR_MAX_D:
        raise UnsupportedDimensionError(f"tensor quadrature limited to d <= {TENSOR_MAX_D}, got d={d}")
    _check_order(lam)
    transform = spec.radial_transform
    levels = [_tensor_entropy_at(state, chain, lam, o, scales, transform) for o in (order, 2 * order)]
    return levels[1], abs(levels[1] - levels[0])


def renyi_total_tensor(
    state: RadialState,
    chain: QuantumNumberChain,
    lam: float,
    spec: quad.QuadratureSpec | None = None,
    order: int = TENSOR_ORDER,
) -> quad.EntropyValue:
    """H_lam by tensor-product quadrature of the full density (d <= 4).

    ``order`` is the per-panel rule size of the coarse level; the reported
    value comes from the level at twice that size.
    """
    _check_pair(state, chain)
    spec = spec or quad.QuadratureSpec()
    value, err = _tensor_entropy(state, chain, lam, np.ones(chain.d), spec, order)
    return quad.EntropyValue(lam, value, "quadrature_tensor", err)


def scaling_check(
    state: RadialState,
    chain: QuantumNumberChain,
    diag_scale,
    lam: float,
    spec: quad.QuadratureSpec | None = None,
    order: int = TENSOR_ORDER,
) -> float:
    """Residual of H[stretched] - H[original] - 1/2 sum ln(scale_i^2).

    Both entropies come from tensor quadrature; the stretched density is
    integrated in its own coordinates.
    """
    _check_pair(state, chain)
    scales = np.asarray(diag_scale, dtype=float)
    if scales.shape != (chain.d,):
        raise DomainError(f"need {chain.d} scale factors")
    if np.any(scales <= 0):
        raise DomainError("scale factors must be positive")
    spec = spec or quad.QuadratureSpec()
    h_x = _tensor_entropy(state, chain, lam, scales, spec, order)[0]
    h_y = _tensor_entropy(state, chain, lam, np.ones(chain.d), spec, order)[0]
    return h_x - h_y - 0.5 * float(np.sum(np.log(scales**2)))
