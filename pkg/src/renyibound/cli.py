"""Command-line interface.

Exit codes: 0 success, 1 bound violation, 2 invalid input, 3 numeric
nonconvergence.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import angular, maxent, report, sampling, states
from .angular import QuantumNumberChain
from .entropy import renyi_radial, renyi_total
from .quadrature import NonConvergenceError, QuadratureSpec
from .special import DomainError

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(DomainError):
    pass


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _spec(args) -> QuadratureSpec:
    return QuadratureSpec(base_order=args.order, rel_tol=args.tol)


def _chain(args, d: int, l: int | None = None) -> QuantumNumberChain:
    if args.mu:
        return QuantumNumberChain.parse(d, args.mu)
    if l is None:
        raise UsageError("--mu is required")
    if d == 2:
        return QuantumNumberChain(2, (l,))
    return QuantumNumberChain(d, (l,) + (0,) * (d - 2))


def _state(args) -> states.RadialState:
    if args.d is None:
        raise UsageError("--d is required")
    d = int(args.d)
    if args.system == "file":
        if not args.file:
            raise UsageError("--system file needs --file PATH")
        l = _chain(args, d).l if args.mu else 0
        return states.read_tabulated(args.file, d, l)
    if not args.state:
        raise UsageError(f"--system {args.system} needs --state n,l")
    numbers = _ints(args.state)
    if len(numbers) != 2:
        raise UsageError("--state takes two integers")
    return report.build_state(args.system, numbers, d)


def _emit(payload, fmt: str, keys=None):
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        sys.stdout.write(report.to_csv(rows, keys or list(rows[0].keys())))
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _rounded(d: dict) -> dict:
    return {k: report.fmt_float(v) for k, v in d.items()}


def cmd_bound(args) -> int:
    if args.d is None or args.lam is None or args.r2 is None:
        raise UsageError("bound needs --d, --lambda and --r2")
    d = int(args.d)
    lam = _floats(args.lam)[0]
    order = maxent.RenyiOrder(lam, d).check_bounded()
    bd = maxent.bd_lambda(order)
    baseline = maxent.baseline_renyi_bound(order, args.r2)
    out = {"d": d, "lambda": lam, "r2": args.r2, "B_d": bd, "bound_baseline": baseline}
    if args.mu:
        chain = _chain(args, d)
        loss = angular.entropy_loss(chain)
        out.update(mu=list(chain.mu), loss=loss, bound_improved=baseline + loss)
    if args.paper_exact:
        out["B_d_paper_exact"] = maxent.bd_lambda_flipped(order)
    _emit(_rounded(out), args.format)
    return EXIT_OK


def cmd_entropy(args) -> int:
    state = _state(args)
    lam = _floats(args.lam)[0] if args.lam else 1.0
    spec = _spec(args)
    if state.d == 1:
        h = renyi_radial(state, lam, spec)
        out = {"system": str(state.label), "d": 1, "mu": [], "lambda": lam, "H_radial": h.value}
    else:
        chain = _chain(args, state.d, state.l)
        h = renyi_total(state, chain, lam, spec)
        rad = renyi_radial(state, lam, spec)
        out = {
            "system": str(state.label), "d": state.d, "mu": list(chain.mu), "lambda": lam,
            "H": h.value, "H_method": h.method, "H_est_error": h.est_error,
            "H_radial": rad.value, "H_angular": angular.angular_renyi(chain, lam, spec),
        }
    _emit(_rounded(out), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    state = _state(args)
    chain = _chain(args, state.d, state.l)
    lams = _floats(args.lam) if args.lam else [1.0]
    reps = [report.verify(state, chain, lam, _spec(args), args.paper_exact) for lam in lams]
    if args.format == "csv":
        sys.stdout.write(report.to_csv(reps))
    else:
        sys.stdout.write(report.to_json(reps[0] if len(reps) == 1 else reps))
    return EXIT_OK if all(r.holds for r in reps) else EXIT_VIOLATION


def cmd_sweep(args) -> int:
    systems_arg = args.system or "oscillator,hydrogen"
    names = [s.strip() for s in systems_arg.split(",") if s.strip()]
    if any(n not in ("oscillator", "hydrogen") for n in names):
        raise UsageError("sweep supports --system oscillator,hydrogen")
    systems = [s for s in report.catalog_systems(args.oscillator_max, args.hydrogen_max) if s[0] in names]
    dims = _ints(args.d) if args.d else [2, 3, 5]
    lams = _floats(args.lam) if args.lam is not None else [0.8, 1.0, 1.5, 2.0, 3.0]
    mu_list = [tuple(_ints(m)) for m in args.mu.split(";")] if args.mu else None
    recs = report.sweep(systems, dims, lams, _spec(args), mu_list, args.paper_exact, args.workers)
    if args.format == "csv":
        sys.stdout.write(report.to_csv(recs))
    else:
        sys.stdout.write(report.to_json(recs))
    violated = any(isinstance(r, report.BoundReport) and not r.holds for r in recs)
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_sample_cov(args) -> int:
    state = _state(args)
    chain = _chain(args, state.d, state.l)
    pts = sampling.sample_state(state, chain, args.samples, args.seed)
    est = sampling.empirical_covariance(pts)
    expected = list(angular.correlation_diagonal(chain))
    tol = 4.0 / math.sqrt(args.samples)
    diag = [float(v) for v in est.diagonal]
    within = est.max_off_diagonal <= tol and all(abs(a - b) <= tol for a, b in zip(diag, expected))
    out = {
        "system": str(state.label), "d": state.d, "mu": list(chain.mu),
        "samples": args.samples, "seed": args.seed,
        "correlation_diagonal": [report.fmt_float(v) for v in diag],
        "expected_diagonal": [report.fmt_float(v) for v in expected],
        "max_off_diagonal": est.max_off_diagonal, "tolerance": tol, "within_tolerance": within,
    }
    if args.format == "json":
        out["second_moment"] = [[report.fmt_float(float(v)) for v in row] for row in est.second_moment]
    _emit(_rounded(out), args.format)
    return EXIT_OK


def cmd_loss(args) -> int:
    if args.d is None or not args.mu:
        raise UsageError("loss needs --d and --mu")
    chain = _chain(args, int(args.d))
    diag = angular.correlation_diagonal(chain)
    out = {
        "d": chain.d, "mu": list(chain.mu),
        "cos2_moments": [report.fmt_float(angular.cos2_moment(chain, k)) for k in range(1, chain.d)],
        "correlation_diagonal": [report.fmt_float(v) for v in diag],
        "loss": angular.entropy_loss(chain), "kl_loss": angular.kl_loss(diag),
    }
    _emit(_rounded(out), args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", help="dimension (sweep: comma list)")
    common.add_argument("--lambda", dest="lam", metavar="LAMBDA", help="Renyi order (verify/sweep: comma list)")
    common.add_argument("--r2", type=float, help="<r^2> for the bound subcommand")
    common.add_argument("--mu", help="quantum-number chain, e.g. 1,0 (sweep: ';'-separated list)")
    common.add_argument("--system", help="oscillator | hydrogen | file (sweep: comma list)")
    common.add_argument("--state", help="catalog quantum numbers n,l")
    common.add_argument("--file", help="two-column (r, R) table for --system file")
    common.add_argument("--order", type=int, default=96, help="base Gauss-Legendre order per panel")
    common.add_argument("--tol", type=float, default=1e-10, help="relative refinement tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100_000)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--paper-exact", action="store_true", help="also report B_d with the sign-flipped 1/(1-lambda) exponent for lambda > 1")

    parser = argparse.ArgumentParser(prog="renyibound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bound", parents=[common], help="B_d(lambda), baseline and improved bounds").set_defaults(func=cmd_bound)
    sub.add_parser("entropy", parents=[common], help="H_lambda of a state").set_defaults(func=cmd_entropy)
    sub.add_parser("verify", parents=[common], help="bound report for one state").set_defaults(func=cmd_verify)
    sw = sub.add_parser("sweep", parents=[common], help="bound reports over the state catalog")
    sw.add_argument("--oscillator-max", type=int, default=2, help="largest oscillator n_r and l")
    sw.add_argument("--hydrogen-max", type=int, default=3, help="largest hydrogen n")
    sw.add_argument("--workers", type=int, default=1)
    sw.set_defaults(func=cmd_sweep)
    sub.add_parser("sample-cov", parents=[common], help="Monte Carlo covariance of a state").set_defaults(func=cmd_sample_cov)
    sub.add_parser("loss", parents=[common], help="angular entropy loss of a chain").set_defaults(func=cmd_loss)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.system is None and args.command in ("entropy", "verify", "sample-cov"):
        args.system = "hydrogen"
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"renyibound: numeric nonconvergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, ValueError, OSError) as exc:
        print(f"renyibound: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
