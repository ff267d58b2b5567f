"""Command-line surface: change a state, check weight properties, sweep
postulates, and run convergence experiments.

Exit codes: 0 on success, 1 on a named domain error (printed to stderr),
2 on usage errors. Machine-readable output keeps probabilities as rational
strings; human output renders decimals to 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .belief import load_belief_state
from .errors import DomainError
from .imaging import ChangeResult, iterate
from .lab import TrialConfig, decimal_str, emit_csv, emit_summary, run_convergence
from .logic import Vocabulary, default_vocabulary, parse_formula
from .metric import hamming, load_distance
from .operators import INNER_NAMES, OPERATOR_NAMES, make_operator
from .postulates import (
    CORE_REVISION,
    CORE_UPDATE,
    LABELS,
    SuiteConfig,
    check_revision,
    check_update,
)
from .weights import (
    ALL_PROPERTIES,
    bc_weight,
    check_weight_properties,
    dfr_weight,
    gi_weight,
    li_weight,
    rcp_weight,
)

WEIGHT_NAMES = ("rcp", "dfr", "bc", "li", "gi")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _vocab_arg(text: str) -> Vocabulary:
    if text.isdigit():
        return default_vocabulary(int(text))
    return Vocabulary(tuple(name.strip() for name in text.split(",")))


def _posterior_payload(result: ChangeResult, verbose: bool) -> dict:
    payload = {
        name: str(p) for name, p in result.posterior.as_mapping().items()
    }
    if verbose:
        return {
            "operator": result.operator,
            "gamma": str(result.gamma),
            "posterior": payload,
        }
    return payload


def _print_result(result: ChangeResult, args) -> None:
    if args.format == "json":
        print(json.dumps(_posterior_payload(result, args.verbose)))
    else:
        for name, p in result.posterior.as_mapping().items():
            print(f"{name}  {decimal_str(p)}")
        if args.verbose:
            print(f"gamma  {decimal_str(result.gamma)}")


def _cmd_change(args) -> int:
    state = load_belief_state(args.state)
    vocab = state.vocab
    distance = load_distance(args.distance) if args.distance else hamming(vocab)
    evidence = parse_formula(args.evidence, vocab)
    op = make_operator(args.op, vocab, distance=distance,
                       inner=args.inner, eta=args.eta)
    if args.iterations > 1:
        steps = []
        current = state
        for _ in range(args.iterations):
            step = op.change(current, evidence)
            steps.append(step)
            current = step.posterior
        if args.format == "json":
            print(json.dumps([_posterior_payload(s, args.verbose)
                              for s in steps]))
        else:
            for i, step in enumerate(steps, start=1):
                print(f"step {i}")
                _print_result(step, args)
    else:
        _print_result(op.change(state, evidence), args)
    return 0


def _build_weight(args, vocab, distance):
    if args.weight == "rcp":
        return rcp_weight(distance, args.eta)
    if args.weight == "dfr":
        return dfr_weight(distance, args.eta)
    if args.weight == "bc":
        return bc_weight()
    if args.weight == "li":
        return li_weight(distance, args.x)
    return gi_weight(distance)


def _cmd_check_weights(args) -> int:
    vocab = args.atoms
    distance = load_distance(args.distance) if args.distance else hamming(vocab)
    weight = _build_weight(args, vocab, distance)
    report = check_weight_properties(weight, vocab, distance=distance)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"weight {report.weight_name} over {report.domain['worlds']} "
              f"worlds, {report.domain['evidence_sets']} evidence sets")
        for prop in ALL_PROPERTIES:
            verdict = report.verdicts[prop]
            status = "holds" if verdict.holds else "VIOLATED"
            line = f"  {prop:<18} {status}"
            if verdict.witness is not None:
                line += f"  [{verdict.witness.describe(vocab)}]"
            print(line)
    if args.expect:
        expected = [p.strip() for p in args.expect.split(",") if p.strip()]
        unknown = [p for p in expected if p not in ALL_PROPERTIES]
        if unknown:
            print(f"unknown properties: {', '.join(unknown)}", file=sys.stderr)
            return 2
        missing = [p for p in expected if not report.holds(p)]
        if missing:
            for p in missing:
                witness = report.witness(p)
                detail = f": {witness.describe(vocab)}" if witness else ""
                print(f"expected {p} to hold, but it is violated{detail}",
                      file=sys.stderr)
            return 1
    return 0


def _cmd_postulates(args) -> int:
    config = SuiteConfig(atoms=args.atoms, grid_denominator=args.grid)
    vocab = config.vocab
    distance = load_distance(args.distance) if args.distance else hamming(vocab)
    op = make_operator(args.op, vocab, distance=distance,
                       inner=args.inner, eta=args.eta)
    if args.suite == "revision":
        report = check_revision(op, config)
        core = CORE_REVISION
    else:
        report = check_update(op, config)
        core = CORE_UPDATE
    shown = report.to_dict()
    if not args.report_all:
        shown["postulates"] = {
            pid: entry for pid, entry in shown["postulates"].items()
            if pid in core
        }
    if args.format == "json":
        print(json.dumps(shown, indent=2))
    else:
        print(f"{args.suite} postulates for {report.suite['operator']} "
              f"(atoms={report.suite['atoms']}, "
              f"denominator={report.suite['grid_denominator']})")
        for pid, entry in shown["postulates"].items():
            marker = " (core)" if pid in core else ""
            print(f"  {pid:<6} {entry['verdict']:<15}{marker}  {LABELS[pid]}")
            if "witness" in entry:
                print(f"         witness: {json.dumps(entry['witness'])}")
    return 0 if report.cores_hold() else 1


def _cmd_converge(args) -> int:
    config = TrialConfig(
        weight=args.weight, eta=args.eta, atoms=args.atoms,
        trials=args.trials, iterations=args.iterations, seed=args.seed,
    )
    table = run_convergence(config, workers=args.workers)
    if args.out:
        emit_csv(table, args.out)
    if args.format == "json":
        print(json.dumps({
            "config": {
                "weight": config.weight, "eta": str(config.eta),
                "atoms": config.atoms, "trials": config.trials,
                "iterations": config.iterations, "seed": config.seed,
            },
            "mean_abs_diff": [str(v) for v in table.mean_abs_diff],
        }))
    else:
        print(emit_summary(table), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edimaging",
        description="Probabilistic belief change by distance-weighted imaging.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    change = sub.add_parser("change", help="apply a change operator to a state")
    change.add_argument("--op", required=True, choices=OPERATOR_NAMES)
    change.add_argument("--state", required=True,
                        help="belief-state JSON file")
    change.add_argument("--evidence", required=True,
                        help="evidence formula over the state's atoms")
    change.add_argument("--eta", type=_fraction, default=Fraction(1))
    change.add_argument("--inner", choices=INNER_NAMES, default="rcp")
    change.add_argument("--distance", help="custom distance JSON file")
    change.add_argument("--iterations", type=int, default=1)
    change.add_argument("--format", choices=("json", "human"), default="json")
    change.add_argument("--verbose", action="store_true",
                        help="include the normalizer in the output")
    change.set_defaults(fn=_cmd_change)

    check = sub.add_parser("check-weights",
                           help="verify weight-function properties")
    check.add_argument("--weight", required=True, choices=WEIGHT_NAMES)
    check.add_argument("--atoms", type=_vocab_arg, required=True,
                       help="atom count or comma-separated names")
    check.add_argument("--eta", type=_fraction, default=Fraction(1))
    check.add_argument("--x", type=_fraction, default=Fraction(0))
    check.add_argument("--distance", help="custom distance JSON file")
    check.add_argument("--expect",
                       help="comma-separated properties that must hold")
    check.add_argument("--format", choices=("json", "human"), default="human")
    check.set_defaults(fn=_cmd_check_weights)

    post = sub.add_parser("postulates", help="sweep rationality postulates")
    post.add_argument("--suite", required=True, choices=("revision", "update"))
    post.add_argument("--op", required=True, choices=OPERATOR_NAMES)
    post.add_argument("--atoms", type=int, default=2)
    post.add_argument("--grid", type=int, default=None,
                      help="grid denominator (default 4 for 2 atoms, else 2)")
    post.add_argument("--eta", type=_fraction, default=Fraction(1))
    post.add_argument("--inner", choices=INNER_NAMES, default="rcp")
    post.add_argument("--distance", help="custom distance JSON file")
    post.add_argument("--report-all", action="store_true",
                      help="show non-core postulates too")
    post.add_argument("--format", choices=("json", "human"), default="human")
    post.set_defaults(fn=_cmd_postulates)

    conv = sub.add_parser("converge", help="run a convergence experiment")
    conv.add_argument("--weight", required=True, choices=("rcp", "dfr"))
    conv.add_argument("--eta", type=_fraction, default=Fraction(1))
    conv.add_argument("--atoms", type=int, default=3)
    conv.add_argument("--trials", type=int, default=100)
    conv.add_argument("--iterations", type=int, default=10)
    conv.add_argument("--seed", type=int, required=True,
                      help="run seed (required: output must be reproducible)")
    conv.add_argument("--out", help="write the per-iteration CSV here")
    conv.add_argument("--workers", type=int, default=1)
    conv.add_argument("--format", choices=("json", "human"), default="human")
    conv.set_defaults(fn=_cmd_converge)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
