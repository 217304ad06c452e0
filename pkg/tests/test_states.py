import math

import numpy as np
import pytest
from scipy import integrate

from renyibound.special import DomainError
from renyibound.states import (
    MomentMismatchError,
    NormalizationError,
    RadialState,
    StateFormatError,
    hydrogen_state,
    oscillator_state,
    r2_expectation,
    read_tabulated,
    tabulated_state,
)


def quad_moment(state, power):
    # scipy on [0, inf) in pieces, independent of the package's rules
    f = lambda r: state(r) ** 2 * r ** (state.d - 1 + power)
    edges = [0.0] + sorted(state.breaks) + [math.inf]
    return sum(integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-12, limit=400)[0] for a, b in zip(edges, edges[1:]))


CATALOG = [oscillator_state(nr, l, d) for nr in range(3) for l in range(3) for d in (2, 3, 5)] + [
    hydrogen_state(n, l, d) for n in range(1, 4) for l in range(n) for d in (2, 3, 5)
]


@pytest.mark.parametrize("state", CATALOG, ids=lambda s: f"{s.label}-d{s.d}")
def test_unit_norm(state):
    assert quad_moment(state, 0) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("d", [2, 3, 5])
@pytest.mark.parametrize("n_r", range(4))
@pytest.mark.parametrize("l", range(4))
def test_oscillator_r2_matches_formula(n_r, l, d):
    s = oscillator_state(n_r, l, d)
    assert s.r2_analytic == 2 * n_r + l + d / 2
    assert r2_expectation(s) == pytest.approx(s.r2_analytic, abs=1e-8)
    assert quad_moment(s, 2) == pytest.approx(s.r2_analytic, rel=1e-10)


@pytest.mark.parametrize("n,l", [(n, l) for n in range(1, 5) for l in range(n)])
def test_hydrogen_r2_d3(n, l):
    s = hydrogen_state(n, l, 3)
    assert r2_expectation(s) == pytest.approx(n * n * (5 * n * n + 1 - 3 * l * (l + 1)) / 2, rel=1e-10)


def test_hydrogen_examples():
    s = hydrogen_state(1, 0, 3)
    r = np.linspace(0, 10, 11)
    assert np.allclose(s(r), 2 * np.exp(-r), atol=1e-12)
    assert r2_expectation(s) == pytest.approx(3.0, abs=1e-10)
    assert r2_expectation(hydrogen_state(2, 1, 3)) == pytest.approx(30.0, abs=1e-8)
    assert str(s.label) == "hydrogen(1,0)"
    assert "1/r" in s.label.potential


def test_oscillator_examples():
    assert r2_expectation(oscillator_state(0, 0, 3)) == pytest.approx(1.5, abs=1e-10)
    assert r2_expectation(oscillator_state(1, 1, 3)) == pytest.approx(4.5, abs=1e-10)
    assert r2_expectation(oscillator_state(0, 0, 2)) == pytest.approx(1.0, abs=1e-10)
    # ground state: R^2 over the sphere area is the N(0, I/2) density
    for d in (1, 2, 4):
        s = oscillator_state(0, 0, d)
        area = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
        r = np.array([0.0, 0.3, 1.2, 2.5])
        gauss = math.pi ** (-d / 2) * np.exp(-r * r)
        assert np.allclose(s(r) ** 2 / area, gauss, rtol=1e-10)


@pytest.mark.parametrize("d", [2, 3, 5])
@pytest.mark.parametrize("l", range(3))
def test_oscillator_orthogonality(l, d):
    a, b = oscillator_state(0, l, d), oscillator_state(1, l, d)
    overlap = integrate.quad(lambda r: a(r) * b(r) * r ** (d - 1), 0, math.inf, epsabs=1e-13)[0]
    assert abs(overlap) <= 1e-9


def test_hydrogen_errors():
    with pytest.raises(DomainError):
        hydrogen_state(2, 2, 3)
    with pytest.raises(DomainError):
        hydrogen_state(0, 0, 3)
    with pytest.raises(DomainError):
        hydrogen_state(1, 0, 1)


def test_states_are_frozen():
    s = oscillator_state(0, 0, 3)
    with pytest.raises(AttributeError):
        s.d = 4


def test_moment_mismatch_detected():
    s = oscillator_state(0, 0, 3)
    bad = RadialState(s.d, s.l, s.amplitude, s.label, 1.6, s.breaks, s.scale)
    with pytest.raises(MomentMismatchError):
        r2_expectation(bad)


def test_tabulated_hydrogen_1s():
    r = np.linspace(0, 40, 2001)
    s = tabulated_state(np.column_stack([r, 2 * np.exp(-r)]), 3, 0)
    assert r2_expectation(s) == pytest.approx(3.0, abs=1e-4)
    assert s.r2_analytic is None


def test_tabulated_oscillator_ground():
    r = np.linspace(0, 10, 1001)
    # unnormalized on purpose: the state is renormalized
    s = tabulated_state(np.column_stack([r, 7.0 * np.exp(-r * r / 2)]), 3, 0)
    assert r2_expectation(s) == pytest.approx(1.5, abs=1e-4)
    assert quad_moment_finite(s) == pytest.approx(1.0, abs=1e-9)


def quad_moment_finite(s):
    # one scipy call per interpolation interval; a single call misses the kinks
    f = lambda r: s(r) ** 2 * r ** (s.d - 1)
    return sum(integrate.quad(f, a, b, epsabs=1e-15)[0] for a, b in zip(s.breaks, s.breaks[1:]))


def test_tabulated_is_zero_outside_range():
    r = np.linspace(1, 5, 20)
    s = tabulated_state(np.column_stack([r, np.ones_like(r)]), 2, 0)
    assert s(np.array([0.5, 5.5])).tolist() == [0.0, 0.0]


def test_tabulated_errors():
    r = np.linspace(0, 1, 10)
    good = np.column_stack([r, np.exp(-r)])
    with pytest.raises(NormalizationError):
        tabulated_state(np.column_stack([r, np.zeros_like(r)]), 3, 0)
    with pytest.raises(StateFormatError):
        tabulated_state(good[:7], 3, 0)
    with pytest.raises(StateFormatError):
        tabulated_state(good[::-1], 3, 0)
    neg = good.copy()
    neg[:, 0] -= 0.5
    with pytest.raises(StateFormatError):
        tabulated_state(neg, 3, 0)
    dup = good.copy()
    dup[3, 0] = dup[2, 0]
    with pytest.raises(StateFormatError):
        tabulated_state(dup, 3, 0)
    with pytest.raises(StateFormatError):
        tabulated_state(r, 3, 0)


def test_read_tabulated(tmp_path):
    r = np.linspace(0, 40, 2001)
    lines = ["# hydrogen 1s", "# r  R"]
    for i, (x, y) in enumerate(zip(r, 2 * np.exp(-r))):
        sep = "," if i % 2 else "   "
        lines.append(f"{float(x)!r}{sep}{float(y)!r}  # row {i}" if i == 5 else f"{float(x)!r}{sep}{float(y)!r}")
    path = tmp_path / "h1s.csv"
    path.write_text("\n".join(lines) + "\n\n")
    s = read_tabulated(path, 3, 0)
    assert r2_expectation(s) == pytest.approx(3.0, abs=1e-4)
    assert str(s.label) == "h1s.csv"


def test_read_tabulated_bad_rows(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 1\n1 2 3\n")
    with pytest.raises(StateFormatError, match="bad.txt:2"):
        read_tabulated(p, 3, 0)
    p.write_text("0 one\n")
    with pytest.raises(StateFormatError):
        read_tabulated(p, 3, 0)
    with pytest.raises(OSError):
        read_tabulated(tmp_path / "missing.txt", 3, 0)
