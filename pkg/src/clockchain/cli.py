"""Command-line front end: exact chains, Monte Carlo runs and (N, k) sweeps.

Three subcommands share one tabular schema so their outputs can be mixed
and plotted together:

    n, observer, method, cost, stderr, analytic, error, z

``cost`` is the computed per-observer mean cost; ``analytic`` the
closed-form value for the flat reference (the exact-chain value for the
optimal reference in ``mc`` mode); ``error`` the absolute difference and
``z`` the Monte Carlo z-score against ``analytic``.  Fields that do not
apply are left empty (CSV) or null (JSON).  Exit status: 0 on success,
1 on a numeric failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys

import numpy as np

from .channel import observer_chain_exact
from .core import ClockSpec, optimal_reference_state, reference_phase_state
from .cost import mean_cost_analytic
from .trajectory import DEFAULT_SEED, run_experiment

COLUMNS = ("n", "observer", "method", "cost", "stderr", "analytic", "error", "z")

REFERENCES = {
    "flat": reference_phase_state,
    "optimal": optimal_reference_state,
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _int_list(text: str) -> list:
    items = [piece for piece in text.split(",") if piece.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a nonempty comma-separated list of integers")
    return [_nonneg_int(piece.strip()) for piece in items]


def _float_list(text: str) -> list:
    items = [piece for piece in text.split(",") if piece.strip()]
    return [float(piece.strip()) for piece in items]


def _seed(text: str):
    if text.strip().lower() == "entropy":
        return "entropy"
    return int(text)


def _add_output_flags(sub):
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="output format (default csv)")
    sub.add_argument("--output", metavar="PATH", default=None,
                     help="write to PATH instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clockchain",
        description="Per-observer estimation costs for sequential readouts of an N-qubit phase clock.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    exact = commands.add_parser("exact", help="exact per-observer costs via the recycling channel")
    exact.add_argument("--n", type=_nonneg_int, required=True, help="number of qubits N")
    exact.add_argument("--observers", type=_positive_int, required=True,
                       help="number of sequential observers k")
    exact.add_argument("--reference", choices=sorted(REFERENCES), default="flat",
                       help="initial reference state (default flat)")
    exact.add_argument("--store-states", action="store_true",
                       help="include the intermediate states in JSON output")
    _add_output_flags(exact)

    mc = commands.add_parser("mc", help="Monte Carlo trajectory estimate of the same costs")
    mc.add_argument("--n", type=_nonneg_int, required=True, help="number of qubits N")
    mc.add_argument("--observers", type=_positive_int, required=True,
                    help="number of sequential observers k")
    mc.add_argument("--reference", choices=sorted(REFERENCES), default="flat",
                    help="initial reference state (default flat)")
    mc.add_argument("--trials", type=_positive_int, required=True,
                    help="number of Monte Carlo trajectories")
    mc.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                    help="RNG seed (integer, default fixed; 'entropy' draws a fresh one)")
    mc.add_argument("--delays", type=_float_list, default=None, metavar="LIST",
                    help="comma-separated inter-round evolution times (k-1 values)")
    _add_output_flags(mc)

    compare = commands.add_parser(
        "compare", help="sweep exact vs analytic (and optionally Monte Carlo) over N and k"
    )
    compare.add_argument("--n", type=_int_list, required=True, metavar="LIST",
                         help="comma-separated list of qubit numbers")
    compare.add_argument("--observers", type=_positive_int, required=True,
                         help="largest observer index k to tabulate")
    compare.add_argument("--reference", choices=sorted(REFERENCES), default="flat",
                         help="initial reference state (default flat)")
    compare.add_argument("--trials", type=_positive_int, default=None,
                         help="if given, add Monte Carlo rows with this many trajectories")
    compare.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                         help="RNG seed for the Monte Carlo rows")
    _add_output_flags(compare)

    return parser


def _row(n, observer, method, cost, stderr=None, analytic=None, error=None, z=None):
    return {
        "n": n,
        "observer": observer,
        "method": method,
        "cost": cost,
        "stderr": stderr,
        "analytic": analytic,
        "error": error,
        "z": z,
    }


def _exact_rows(n, observers, reference, store_states=False):
    ref = REFERENCES[reference](ClockSpec(n))
    report = observer_chain_exact(ref, observers, store_states=store_states)
    rows = []
    for j in range(1, observers + 1):
        cost = float(report.costs[j - 1])
        analytic = mean_cost_analytic(n, j) if reference == "flat" else None
        error = abs(cost - analytic) if analytic is not None else None
        rows.append(_row(n, j, "exact", cost, analytic=analytic, error=error))
    return rows, report


def _reference_costs(n, observers, reference):
    if reference == "flat":
        return [mean_cost_analytic(n, j) for j in range(1, observers + 1)]
    ref = REFERENCES[reference](ClockSpec(n))
    return [float(c) for c in observer_chain_exact(ref, observers).costs]


def _mc_rows(n, observers, reference, trials, seed, delays=None):
    ref = REFERENCES[reference](ClockSpec(n))
    estimate = run_experiment(ref, observers, trials, seed=seed, delays=delays)
    targets = _reference_costs(n, observers, reference)
    rows = []
    for j in range(1, observers + 1):
        mean = float(estimate.mean_costs[j - 1])
        err = float(estimate.stderrs[j - 1])
        target = targets[j - 1]
        gap = abs(mean - target)
        z = (mean - target) / err if err > 0.0 else None
        rows.append(_row(n, j, "mc", mean, stderr=err, analytic=target, error=gap, z=z))
    return rows


def _fmt_csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _render_csv(rows) -> str:
    lines = [",".join(COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt_csv_value(row[col]) for col in COLUMNS))
    return "\n".join(lines) + "\n"


def _render_json(rows, states=None) -> str:
    payload = {"rows": rows}
    if states is not None:
        payload["states"] = [
            {
                "observer": j + 1,
                "real": np.real(dm.entries).tolist(),
                "imag": np.imag(dm.entries).tolist(),
            }
            for j, dm in enumerate(states)
        ]
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _resolve_seed(seed) -> int:
    if seed == "entropy":
        drawn = secrets.randbits(63)
        print(f"seed: {drawn}", file=sys.stderr)
        return drawn
    return seed


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "exact" and args.store_states and args.format != "json":
        parser.error("--store-states requires --format json")
    if args.command == "mc" and args.delays is not None and len(args.delays) != args.observers - 1:
        parser.error(f"--delays needs exactly {args.observers - 1} values for "
                     f"{args.observers} observers")

    try:
        states = None
        if args.command == "exact":
            rows, report = _exact_rows(args.n, args.observers, args.reference,
                                       store_states=args.store_states)
            states = report.states
        elif args.command == "mc":
            seed = _resolve_seed(args.seed)
            rows = _mc_rows(args.n, args.observers, args.reference, args.trials,
                            seed, delays=args.delays)
        else:
            rows = []
            for n in args.n:
                exact_rows, _ = _exact_rows(n, args.observers, args.reference)
                rows.extend(exact_rows)
            if args.trials is not None:
                seed = _resolve_seed(args.seed)
                for n in args.n:
                    rows.extend(_mc_rows(n, args.observers, args.reference,
                                         args.trials, seed))
        text = _render_csv(rows) if args.format == "csv" else _render_json(rows, states)
        _emit(text, args.output)
    except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"clockchain: numeric failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
