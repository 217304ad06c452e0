"""Bound reports: entropy of a state against the baseline and improved bounds."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import angular, maxent, states
from .angular import QuantumNumberChain
from .entropy import renyi_total
from .quadrature import EntropyValue, NonConvergenceError, QuadratureSpec
from .special import DomainError

HOLDS_TOLERANCE = 1e-9

REPORT_KEYS = (
    "system", "d", "mu", "lambda", "r2", "H", "H_method", "H_est_error",
    "bound_baseline", "bound_improved", "loss", "slack_baseline", "slack_improved", "holds",
)
PAPER_EXACT_KEYS = ("bound_baseline_paper_exact", "bound_improved_paper_exact")


def fmt_float(v):
    """Round to 15 significant digits; None, bools and non-finite values pass through."""
    if v is None or isinstance(v, bool) or not isinstance(v, float):
        return v
    if not math.isfinite(v):
        return v
    return float(f"{v:.15g}")


@dataclass(frozen=True)
class BoundReport:
    system: str
    d: int
    mu: tuple
    lam: float
    r2: float
    H: EntropyValue
    bound_baseline: float
    bound_improved: float
    loss: float
    paper_exact: tuple | None = None  # (baseline, improved) with the flipped exponent

    def __post_init__(self):
        # store what gets emitted, so slacks of a parsed report equal the original's
        for name in ("r2", "bound_baseline", "bound_improved", "loss"):
            object.__setattr__(self, name, fmt_float(float(getattr(self, name))))
        h = self.H
        object.__setattr__(self, "H", EntropyValue(h.lam, fmt_float(h.value), h.method, fmt_float(h.est_error)))
        if self.paper_exact is not None:
            object.__setattr__(self, "paper_exact", tuple(fmt_float(float(v)) for v in self.paper_exact))

    @property
    def slack_baseline(self) -> float:
        return self.bound_baseline - self.H.value

    @property
    def slack_improved(self) -> float:
        return self.bound_improved - self.H.value

    @property
    def holds(self) -> bool:
        return self.slack_improved >= -HOLDS_TOLERANCE

    def to_dict(self) -> dict:
        out = {
            "system": self.system,
            "d": self.d,
            "mu": list(self.mu),
            "lambda": self.lam,
            "r2": self.r2,
            "H": self.H.value,
            "H_method": self.H.method,
            "H_est_error": self.H.est_error,
            "bound_baseline": self.bound_baseline,
            "bound_improved": self.bound_improved,
            "loss": self.loss,
            "slack_baseline": self.slack_baseline,
            "slack_improved": self.slack_improved,
            "holds": self.holds,
        }
        if self.paper_exact is not None:
            out.update(zip(PAPER_EXACT_KEYS, self.paper_exact))
        return {k: fmt_float(v) for k, v in out.items()}

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        pe = None
        if PAPER_EXACT_KEYS[0] in data:
            pe = tuple(data[k] for k in PAPER_EXACT_KEYS)
        return cls(
            system=data["system"],
            d=int(data["d"]),
            mu=tuple(data["mu"]),
            lam=float(data["lambda"]),
            r2=float(data["r2"]),
            H=EntropyValue(float(data["lambda"]), float(data["H"]), data["H_method"], float(data["H_est_error"])),
            bound_baseline=float(data["bound_baseline"]),
            bound_improved=float(data["bound_improved"]),
            loss=float(data["loss"]),
            paper_exact=pe,
        )


@dataclass(frozen=True)
class CellError:
    """A sweep cell that could not be evaluated."""

    system: str
    d: int
    mu: tuple
    lam: float
    error: str
    kind: str = "error"

    def to_dict(self) -> dict:
        out = {k: None for k in REPORT_KEYS}
        out.update(system=self.system, d=self.d, mu=list(self.mu), holds=None)
        lam = float(self.lam)
        out["lambda"] = fmt_float(lam) if math.isfinite(lam) else None
        out["error"] = f"{self.kind}: {self.error}"
        return out


def verify(
    state: states.RadialState,
    chain: QuantumNumberChain,
    lam: float,
    spec: QuadratureSpec | None = None,
    paper_exact: bool = False,
) -> BoundReport:
    """Compare H_lam of the state with the baseline and angular-corrected bounds."""
    order = maxent.RenyiOrder(float(lam), state.d).check_bounded()
    spec = spec or QuadratureSpec()
    r2 = states.r2_expectation(state)
    h = renyi_total(state, chain, lam, spec)
    baseline = maxent.baseline_renyi_bound(order, r2)
    loss = angular.entropy_loss(chain)
    pe = None
    if paper_exact:
        pb = maxent.bd_lambda_flipped(order) + 0.5 * state.d * math.log(r2 / state.d)
        pe = (pb, pb + loss)
    return BoundReport(str(state.label), state.d, chain.mu, float(lam), r2, h, baseline, baseline + loss, loss, pe)


def build_state(system: str, numbers, d: int) -> states.RadialState:
    if system == "oscillator":
        return states.oscillator_state(int(numbers[0]), int(numbers[1]), d)
    if system == "hydrogen":
        return states.hydrogen_state(int(numbers[0]), int(numbers[1]), d)
    raise DomainError(f"unknown catalog system {system!r}")


def catalog_systems(oscillator_max: int = 2, hydrogen_max: int = 3):
    """Catalog entries: oscillator (n_r, l) with n_r, l <= oscillator_max and
    hydrogen (n, l) with n <= hydrogen_max."""
    out = [("oscillator", (nr, l)) for nr in range(oscillator_max + 1) for l in range(oscillator_max + 1)]
    out += [("hydrogen", (n, l)) for n in range(1, hydrogen_max + 1) for l in range(n)]
    return out


def _cell(args):
    state, chain, lam, spec, paper_exact, label = args
    try:
        return verify(state, chain, lam, spec, paper_exact)
    except maxent.BoundUndefinedError as exc:
        return CellError(label, chain.d, chain.mu, lam, str(exc), "bound undefined")
    except NonConvergenceError as exc:
        return CellError(label, chain.d, chain.mu, lam, str(exc), "nonconvergence")
    except (DomainError, ArithmeticError) as exc:
        return CellError(label, chain.d, chain.mu, lam, str(exc))


def sweep(
    systems,
    dims,
    lambdas,
    spec: QuadratureSpec | None = None,
    mu_list=None,
    paper_exact: bool = False,
    workers: int = 1,
):
    """Reports over every (d, system, chain, lambda) cell, in that nesting order.

    ``systems`` holds ``(name, quantum_numbers)`` pairs. When ``mu_list`` is
    None every chain with mu_1 = l is used; otherwise only the listed chains
    whose d and l match the state. Cell failures become :class:`CellError`
    entries instead of aborting.
    """
    lambdas = list(lambdas)
    if not lambdas:
        raise DomainError("empty lambda grid")
    if not list(dims) or not list(systems):
        raise DomainError("empty system or dimension list")
    spec = spec or QuadratureSpec()
    cells, slots = [], []
    for d in dims:
        for system, numbers in systems:
            label = f"{system}({','.join(str(q) for q in numbers)})"
            try:
                state = build_state(system, numbers, d)
            except DomainError as exc:
                slots.append(CellError(label, d, (), math.nan, str(exc), "invalid state"))
                continue
            if d == 1:
                slots.append(CellError(label, d, (), math.nan, "no angular part for d = 1", "invalid state"))
                continue
            if mu_list is None:
                chains = angular.all_chains(d, state.l)
            else:
                chains = [QuantumNumberChain(d, tuple(m)) for m in mu_list if len(m) == d - 1]
                chains = [c for c in chains if c.l == state.l]
            for chain in chains:
                for lam in lambdas:
                    slots.append(None)
                    cells.append((len(slots) - 1, (state, chain, float(lam), spec, paper_exact, label)))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(_cell, [c for _, c in cells]))
    else:
        results = [_cell(c) for _, c in cells]
    for (i, _), res in zip(cells, results):
        slots[i] = res
    return slots


def to_json(records) -> str:
    if isinstance(records, (BoundReport, CellError)):
        return json.dumps(records.to_dict(), indent=2) + "\n"
    return json.dumps([r.to_dict() for r in records], indent=2) + "\n"


def from_json(text: str):
    data = json.loads(text)
    if isinstance(data, dict):
        return BoundReport.from_dict(data)
    return [BoundReport.from_dict(d) if d.get("error") is None else _error_from_dict(d) for d in data]


def _error_from_dict(d):
    kind, _, msg = d["error"].partition(": ")
    lam = math.nan if d["lambda"] is None else d["lambda"]
    return CellError(d["system"], d["d"], tuple(d["mu"]), lam, msg, kind)


def csv_cell(v) -> str:
    if isinstance(v, list):
        return ",".join(str(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def to_csv(rows, keys=None) -> str:
    """CSV with the JSON key order; ``rows`` are dicts or report objects."""
    dicts = [r if isinstance(r, dict) else r.to_dict() for r in rows]
    if keys is None:
        keys = list(REPORT_KEYS)
        for extra in PAPER_EXACT_KEYS + ("error",):
            if any(extra in dct for dct in dicts):
                keys.append(extra)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(keys)
    for dct in dicts:
        writer.writerow([csv_cell(dct.get(k)) for k in keys])
    return buf.getvalue()
