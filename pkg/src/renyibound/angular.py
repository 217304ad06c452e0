"""Quantities fixed by the hyperspherical harmonic of a state.

Angles follow the usual convention: theta_1 ... theta_{d-2} in [0, pi) and the
azimuth theta_{d-1} in [0, 2 pi), with x_1 = r cos theta_1 and
x_d = r sin theta_1 ... sin theta_{d-2} sin theta_{d-1}. |Y|^2 factorizes into
one polar factor per theta_j (j <= d-2) and the constant 1/(2 pi) in the
azimuth, so every angular integral is a product of one-dimensional ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quadrature as quad
from .special import DomainError, gegenbauer, gegenbauer_roots, log_gegenbauer_norm


class ChainError(DomainError):
    """Quantum numbers violating l = mu_1 >= mu_2 >= ... >= |mu_{d-1}|."""


@dataclass(frozen=True)
class QuantumNumberChain:
    d: int
    mu: tuple

    def __post_init__(self):
        mu = tuple(int(m) for m in self.mu)
        object.__setattr__(self, "mu", mu)
        if int(self.d) != self.d or self.d < 2:
            raise ChainError(f"angular part needs d >= 2, got d={self.d}")
        if len(mu) != self.d - 1:
            raise ChainError(f"d={self.d} needs {self.d - 1} quantum numbers, got {len(mu)}")
        upper = list(mu[:-1]) + [abs(mu[-1])]
        if self.d > 2 and any(a < b for a, b in zip(upper, upper[1:])):
            raise ChainError(f"chain {mu} is not nonincreasing down to |m|")

    @classmethod
    def parse(cls, d: int, text: str) -> "QuantumNumberChain":
        return cls(d, tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def l(self) -> int:
        return abs(self.mu[0]) if self.d == 2 else self.mu[0]

    @property
    def m(self) -> int:
        return self.mu[-1]

    def _mu(self, j: int) -> int:
        """mu_j with |m| in the last slot and mu_d = 0 (1-based j)."""
        if j >= self.d:
            return 0
        if j == self.d - 1:
            return abs(self.mu[-1])
        return self.mu[j - 1]

    def __str__(self):
        return ",".join(str(m) for m in self.mu)


def all_chains(d: int, l: int, signed_m: bool = False):
    """Every valid chain with mu_1 = l, in lexicographic order."""
    if d == 2:
        ms = [l, -l] if signed_m and l else [l]
        return [QuantumNumberChain(2, (m,)) for m in ms]
    out = []

    def extend(prefix):
        if len(prefix) == d - 1:
            out.append(QuantumNumberChain(d, tuple(prefix)))
            return
        top = prefix[-1]
        if len(prefix) == d - 2:
            values = range(-top, top + 1) if signed_m else range(top + 1)
        else:
            values = range(top + 1)
        for v in values:
            extend(prefix + [v])

    extend([l])
    return out


def derived_indices(chain: QuantumNumberChain, j: int):
    """(n_j, lam_j) = (mu_j - mu_{j+1}, (d - 1 - j)/2 + mu_{j+1})."""
    if not 1 <= j <= chain.d - 1:
        raise ChainError(f"j must lie in 1..{chain.d - 1}, got {j}")
    n = chain._mu(j) - chain._mu(j + 1)
    lam = 0.5 * (chain.d - 1 - j) + chain._mu(j + 1)
    return n, lam


def polar_factor(chain: QuantumNumberChain, j: int, theta):
    """Normalized polar factor [C_n^lam(cos t) sin^mu_{j+1} t]^2 / Z(lam, n)."""
    n, lam = derived_indices(chain, j)
    theta = np.asarray(theta, dtype=float)
    c = gegenbauer(n, np.clip(np.cos(theta), -1.0, 1.0), lam=lam)
    s = np.abs(np.sin(theta)) ** chain._mu(j + 1)
    return (c * s) ** 2 * math.exp(-log_gegenbauer_norm(n, lam))


def polar_marginal(chain: QuantumNumberChain, j: int, theta):
    """Probability density of theta_j on [0, pi]: polar factor times sin^(d-1-j)."""
    theta = np.asarray(theta, dtype=float)
    return polar_factor(chain, j, theta) * np.abs(np.sin(theta)) ** (chain.d - 1 - j)


def polar_breaks(chain: QuantumNumberChain, j: int) -> np.ndarray:
    """Panel boundaries on [0, pi]: the endpoints and the zeros of the Gegenbauer factor."""
    n, lam = derived_indices(chain, j)
    roots = np.arccos(gegenbauer_roots(n, lam=lam))[::-1] if n else np.empty(0)
    return np.concatenate([[0.0], roots, [math.pi]])


def angular_density(chain: QuantumNumberChain, angles):
    """|Y_mu|^2 at ``angles`` (last axis holds theta_1 ... theta_{d-1})."""
    a = np.asarray(angles, dtype=float)
    if a.shape[-1] != chain.d - 1:
        raise DomainError(f"expected {chain.d - 1} angles, got {a.shape[-1]}")
    polar = a[..., : chain.d - 2]
    if np.any(polar < 0) or np.any(polar > math.pi):
        raise DomainError("polar angles must lie in [0, pi]")
    if np.any(a[..., -1] < 0) or np.any(a[..., -1] > 2.0 * math.pi):
        raise DomainError("azimuth must lie in [0, 2 pi]")
    out = np.full(a.shape[:-1], 1.0 / (2.0 * math.pi))
    for j in range(1, chain.d - 1):
        out = out * polar_factor(chain, j, a[..., j - 1])
    return float(out) if out.ndim == 0 else out


def _cos2_fraction(chain: QuantumNumberChain, k: int) -> Fraction:
    d = chain.d
    if k == d - 1:
        return Fraction(1, 2)
    n, lam = derived_indices(chain, k)
    mk, mk1 = chain._mu(k), chain._mu(k + 1)
    num = 2 * mk * (mk + d - k - 1) - 2 * mk1 * (mk1 + d - k - 2) + d - k - 3
    den = 4 * mk * (mk + d - k - 1) + (d - k + 1) * (d - k - 3)
    if den == 0:
        # 0/0 exactly when n + lam = 1; limits from the Beta moments of sin^(2 lam)
        if (n, lam) == (0, 1.0):
            return Fraction(1, 4)
        if (n, lam) == (1, 0.0):
            return Fraction(1, 2)
        raise ArithmeticError(f"unexpected singular moment at n={n}, lam={lam}")
    return Fraction(num, den)


def cos2_moment(chain: QuantumNumberChain, k: int) -> float:
    """<cos^2 theta_k> under |Y_mu|^2."""
    if not 1 <= k <= chain.d - 1:
        raise ChainError(f"k must lie in 1..{chain.d - 1}, got {k}")
    return float(_cos2_fraction(chain, k))


@dataclass(frozen=True)
class CorrelationDiagonal:
    entries: tuple

    def __post_init__(self):
        e = tuple(float(x) for x in self.entries)
        object.__setattr__(self, "entries", e)
        if any(x < 0 or x > 1 for x in e):
            raise ValueError("correlation entries must lie in [0, 1]")
        if abs(math.fsum(e) - 1.0) > 1e-12:
            raise ValueError(f"correlation entries sum to {math.fsum(e)}, not 1")

    @property
    def d(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _diagonal_fractions(chain: QuantumNumberChain):
    d = chain.d
    out = []
    tail = Fraction(1)
    for i in range(1, d):
        c = _cos2_fraction(chain, i)
        out.append(tail * c)
        tail *= 1 - c
    out.append(tail)
    return out


def correlation_diagonal(chain: QuantumNumberChain) -> CorrelationDiagonal:
    """Diagonal of C_x = <x x^t> / <r^2>; the off-diagonal part vanishes."""
    return CorrelationDiagonal(tuple(float(f) for f in _diagonal_fractions(chain)))


def entropy_loss(chain: QuantumNumberChain) -> float:
    """Angular entropy loss 1/2 sum ln C_ii + (d/2) ln d (always <= 0)."""
    d = chain.d
    return 0.5 * math.fsum(math.log(f) for f in _diagonal_fractions(chain)) + 0.5 * d * math.log(d)


def entropy_loss_from_moments(chain: QuantumNumberChain) -> float:
    """Same loss assembled from the polar moments directly:
    1/2 sum_{k<=d-2} ((d-k) ln<sin^2> + ln<cos^2>) - ln 2 + (d/2) ln d.
    """
    d = chain.d
    acc = []
    for k in range(1, d - 1):
        c = _cos2_fraction(chain, k)
        acc.append((d - k) * math.log(1 - c) + math.log(c))
    return 0.5 * math.fsum(acc) - math.log(2.0) + 0.5 * d * math.log(d)


def kl_loss(diag) -> float:
    """-(d/2) KL(uniform || diag). Returns -inf if any entry is zero."""
    e = np.asarray(tuple(diag), dtype=float)
    d = e.size
    if np.any(e <= 0):
        return -math.inf
    kl = math.fsum((1.0 / d) * math.log((1.0 / d) / x) for x in e)
    return -0.5 * d * kl + 0.0


def _polar_entropy_term(chain, j, lam, order):
    x, w = quad.panel_rule(polar_breaks(chain, j), order)
    g = polar_factor(chain, j, x)
    w = w * np.sin(x) ** (chain.d - 1 - j)
    return quad.entropy_on_grid(g, w, lam)


def angular_renyi_value(chain: QuantumNumberChain, lam: float, spec: quad.QuadratureSpec | None = None):
    """(H_lam of |Y|^2 on the sphere, est_error)."""
    if not lam > 0:
        raise DomainError(f"Renyi order must be positive, got {lam}")
    spec = spec or quad.QuadratureSpec()
    total = math.log(2.0 * math.pi)
    err = 0.0
    for j in range(1, chain.d - 1):
        n, _ = derived_indices(chain, j)
        if n == 0 and chain._mu(j + 1) == 0:
            # uniform factor: g = 1/Z, entropy is ln Z exactly
            total += log_gegenbauer_norm(0, derived_indices(chain, j)[1])
            continue
        v, e = quad.refine(lambda o: _polar_entropy_term(chain, j, lam, o), spec)
        total += v
        err += e
    return total, err


def angular_renyi(chain: QuantumNumberChain, lam: float, spec: quad.QuadratureSpec | None = None) -> float:
    """Renyi (lam != 1) or Shannon (lam == 1) entropy of |Y_mu|^2 over the sphere."""
    return angular_renyi_value(chain, lam, spec)[0]



def angles_to_cartesian(r, angles):
    """Hyperspherical (r, theta_1 .. theta_{d-1}) to Cartesian x_1 .. x_d."""
    a = np.asarray(angles, dtype=float)
    r = np.asarray(r, dtype=float)[..., None]
    d = a.shape[-1] + 1
    cos, sin = np.cos(a), np.sin(a)
    x = np.empty(a.shape[:-1] + (d,))
    running = np.ones(a.shape[:-1])
    for k in range(d - 1):
        x[..., k] = running * cos[..., k]
        running = running * sin[..., k]
    x[..., d - 1] = running
    return r * x


def cartesian_to_angles(x):
    """Cartesian points to (r, angles); polar angles in [0, pi], azimuth in [0, 2 pi)."""
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    # tail[k] = ||(x_k, ..., x_d)||
    tail = np.sqrt(np.cumsum(x[..., ::-1] ** 2, axis=-1))[..., ::-1]
    angles = np.empty(x.shape[:-1] + (d - 1,))
    for k in range(d - 2):
        angles[..., k] = np.arctan2(tail[..., k + 1], x[..., k])
    angles[..., d - 2] = np.mod(np.arctan2(x[..., d - 1], x[..., d - 2]), 2.0 * math.pi)
    return tail[..., 0], angles
