"""Command-line entry point: ``conedual <command> ...``."""

import argparse
import json
import sys

from .conditions import check_all
from .errors import ConeDualError, DimensionError, InternalInvariantViolation, InvalidInstance, PolicyError
from .geometry import env_policy, policy_named
from .report import emit_reports, reports_to_csv
from .serialize import dumps, instance_from_json, instance_to_json, symmetric_from_json

EXIT_OK = 0
EXIT_INVARIANT = 2
EXIT_INPUT = 3


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInstance(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path} is not valid JSON: {exc}") from exc


def _instance(args):
    policy = policy_named(getattr(args, "policy", None)) or env_policy()
    return instance_from_json(_load(args.instance), policy)


def cmd_solve(args):
    from .solver import solve_pair
    inst = _instance(args)
    report = solve_pair(inst, check_all(inst) if args.conditions else None)
    print(reports_to_csv([report]) if args.emit == "csv" else dumps(report), end="" if args.emit == "csv" else "\n")


def cmd_conditions(args):
    print(dumps(check_all(_instance(args))))


def cmd_convert(args):
    from .reformulate import to_hyperplane_dual_form, to_hyperplane_primal_form
    s = symmetric_from_json(_load(args.instance))
    convert = to_hyperplane_primal_form if args.direction == "primal" else to_hyperplane_dual_form
    print(json.dumps(instance_to_json(convert(s, instance_id=args.id)), indent=2))


def cmd_gallery(args):
    from .gallery import builtin_gallery, verify_gallery
    entries = builtin_gallery(verify=False)
    checks = verify_gallery(entries)
    for c in checks:
        mark = "ok" if c.ok else "MISMATCH " + "; ".join(c.mismatches)
        print(f"{c.entry.id:28s} cell={c.report.table1_cell:5s} expected={c.entry.expected_cell:5s} {mark}")
    if args.emit:
        paths = emit_reports([c.report for c in checks], args.emit, args.outdir,
                             {e.id: e.instance for e in entries})
        for p in paths:
            print(f"wrote {p}")
    if not all(c.ok for c in checks):
        raise InternalInvariantViolation("gallery verification failed")


def cmd_propcheck(args):
    from .propcheck import run_property_suite
    report = run_property_suite(args.seed, args.count)
    sys.stdout.write(report.text())
    if not report.passed:
        for r in report.results.values():
            for f in r.failures:
                print(json.dumps({"property": r.name, **f}), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="conedual", description="Duality checks for conic programs "
                                "over an intersection of two cones with a hyperplane constraint.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve the primal and both duals of an instance")
    s.add_argument("instance", help="instance JSON file, or - for stdin")
    s.add_argument("--policy", choices=("exact", "float"))
    s.add_argument("--emit", choices=("json", "csv"), default="json")
    s.add_argument("--conditions", action="store_true", help="also evaluate Sp, Sd, Tp, Td")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("conditions", help="evaluate the regularity conditions")
    s.add_argument("instance")
    s.add_argument("--policy", choices=("exact", "float"))
    s.set_defaults(func=cmd_conditions)

    s = sub.add_parser("convert", help="rewrite a symmetric pair as a hyperplane instance")
    s.add_argument("instance", help="symmetric instance JSON file")
    s.add_argument("--direction", choices=("primal", "dual"), default="primal")
    s.add_argument("--id", default="converted")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("gallery", help="verify the builtin gallery and emit reports")
    s.add_argument("--emit", default="", help="comma-separated subset of json,csv,svg")
    s.add_argument("--outdir", default="gallery-out")
    s.set_defaults(func=cmd_gallery)

    s = sub.add_parser("propcheck", help="run the randomized property suite")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--count", type=int, default=100)
    s.set_defaults(func=cmd_propcheck)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or EXIT_OK
    except InternalInvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidInstance, PolicyError, DimensionError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConeDualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
