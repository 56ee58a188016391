"""Command line interface.

Commands
--------
classify       criteria report for a state file; exit code encodes the verdict
measure        evaluate named measures on a state file
distill        CSV trace of the recurrence purity map
scan           CSV grid scan of a simplex family
chsh           closed-form CHSH maximum plus achieving settings
witness-check  product-state minimum of a Hermitian operator file

States (and witness operators) are JSON files in the format written by
``entanglekit.states.save_state``.  All commands are deterministic for
fixed flags and ``--seed``; exit codes: 0 success (classify: Separable),
1 entangled verdict, 2 undecided, 64 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import measures as measures_mod
from .criteria import classify
from .geometry import Witness, verify_witness
from .nonlocality import chsh_max, chsh_value, optimal_chsh_settings
from .distillation import iterate_distill
from .simplex import region_csv, scan_region
from .states import load_state

EXIT_OK = 0
EXIT_ENTANGLED = 1
EXIT_UNDECIDED = 2
EXIT_INPUT = 64


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="\n") as fh:
            fh.write(text)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _load_operator(path: str) -> Witness:
    """Hermitian operator in the state-file layout, without state validation."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        d1, d2, raw = int(doc["d1"]), int(doc["d2"]), doc["matrix"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"operator file must define d1, d2 and matrix: {exc}") from exc
    mat = [[complex(re, im) for re, im in row] for row in raw]
    return Witness(mat, d1, d2)


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        rho = load_state(args.input)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(str(exc))
    report = classify(rho)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.output)
    if report.verdict == "Separable":
        return EXIT_OK
    if report.verdict == "Undecided":
        return EXIT_UNDECIDED
    return EXIT_ENTANGLED


def cmd_measure(args: argparse.Namespace) -> int:
    try:
        rho = load_state(args.input)
        names = [n.strip() for n in args.measures.split(",") if n.strip()]
        if not names:
            raise ValueError("no measures requested")
        results = [measures_mod.evaluate_measure(rho, n, seed=args.seed) for n in names]
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(str(exc))
    _emit(json.dumps([r.to_dict() for r in results], indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_distill(args: argparse.Namespace) -> int:
    try:
        trace = iterate_distill(args.f0, args.steps)
    except ValueError as exc:
        return _fail(str(exc))
    if args.f0 <= 0.5:
        print("note: purity <= 1/2 is not improved by the protocol", file=sys.stderr)
    _emit(trace.to_csv(), args.output)
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    try:
        cells = scan_region(args.family, args.grid, gamma=args.gamma)
    except ValueError as exc:
        return _fail(str(exc))
    _emit(region_csv(cells), args.output)
    return EXIT_OK


def cmd_chsh(args: argparse.Namespace) -> int:
    try:
        rho = load_state(args.input)
        value = chsh_max(rho)
        settings = optimal_chsh_settings(rho)
        achieved = chsh_value(rho, settings)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(str(exc))
    doc = {
        "chsh_max": value,
        "settings_found": {
            "a1": list(settings.a1),
            "a2": list(settings.a2),
            "b1": list(settings.b1),
            "b2": list(settings.b2),
            "value": achieved,
        },
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_witness_check(args: argparse.Namespace) -> int:
    try:
        w = verify_witness(_load_operator(args.input), seed=args.seed)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(str(exc))
    doc = {
        "min_product_expectation": w.min_product_expectation,
        "verified": w.verified,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entanglekit",
        description="Bipartite state analysis: separability, measures, Bell tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("--input", required=True, help="state JSON file")
        p.add_argument("--output", default=None, help="write result here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for stochastic subroutines")

    p = sub.add_parser("classify", help="run all separability criteria")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("measure", help="evaluate entanglement/mixedness measures")
    common(p)
    p.add_argument(
        "--measures",
        required=True,
        help="comma-separated names: " + ", ".join(measures_mod.MEASURE_NAMES),
    )
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("distill", help="trace the recurrence purity map")
    common(p, needs_input=False)
    p.add_argument("--f0", type=float, required=True, help="initial purity in [0, 1]")
    p.add_argument("--steps", type=int, required=True, help="number of iterations")
    p.set_defaults(func=cmd_distill)

    p = sub.add_parser("scan", help="grid scan of a simplex family (CSV)")
    common(p, needs_input=False)
    p.add_argument("--family", choices=("line", "offline"), required=True)
    p.add_argument("--grid", type=int, default=50, help="grid points per axis")
    p.add_argument("--gamma", type=float, default=None, help="fix gamma to scan a slice")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("chsh", help="closed-form CHSH maximum and settings")
    common(p)
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("witness-check", help="product minimum of a Hermitian operator")
    common(p)
    p.set_defaults(func=cmd_witness_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
