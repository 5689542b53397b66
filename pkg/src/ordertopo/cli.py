"""Command-line interface for ordertopo.

Exit codes: 0 success, 1 exhaustion or a negative result, 2 input error,
3 capacity or budget exceeded.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from ordertopo import __version__
from ordertopo.config import EngineConfig
from ordertopo.engine.audit import AUDITS, run_audit
from ordertopo.engine.enumeration import KINDS, EnumSpec, count
from ordertopo.engine.oracles import ORACLES, run_oracle
from ordertopo.engine.predicates import REGISTRY, evaluate_predicate
from ordertopo.engine.search import NAMED_EXPRESSIONS, SEARCH_KINDS, find_witness
from ordertopo.errors import (
    CapacityExceeded,
    OrderTopoError,
    PredicateKindMismatch,
    UnknownPredicate,
)
from ordertopo.formats import (
    describe,
    load_structure,
    serialize_structure,
    to_document,
    to_dot,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _emit_json(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, indent=2))


def _config(args: argparse.Namespace, **overrides: Any) -> EngineConfig:
    return EngineConfig(workers=args.workers, progress=args.progress, **overrides)


def cmd_check(args: argparse.Namespace) -> int:
    parsed = load_structure(args.file)
    kind = "topo_semilattice" if parsed.kind == "semilattice" else "topo_poset"
    names = [name for item in args.props for name in item.split(",") if name]
    if args.all or not names:
        names = [name for name, pred in REGISTRY.items() if kind in pred.kinds]
    for position, name in enumerate(names):
        if name not in REGISTRY:
            raise UnknownPredicate(name, position)

    results: dict[str, bool | None] = {}
    reasons: dict[str, str] = {}
    for name in names:
        try:
            results[name] = evaluate_predicate(name, parsed.structure)
        except PredicateKindMismatch:
            results[name] = None
            reasons[name] = "needs a semilattice"
        except CapacityExceeded as exc:
            results[name] = None
            reasons[name] = str(exc)

    if args.json:
        _emit_json(
            {
                "status": "ok",
                "kind": parsed.kind,
                "n": parsed.structure.n,
                "opens_defaulted": parsed.opens_defaulted,
                "results": results,
                "unevaluated": reasons,
            }
        )
        return EXIT_OK
    if parsed.opens_defaulted:
        print("opens: absent, using the discrete topology")
    for name, value in results.items():
        if value is None:
            print(f"{name}: unevaluated ({reasons[name]})")
        else:
            print(f"{name}: {'true' if value else 'false'}")
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    kind, expr = args.kind, args.expr
    if expr in NAMED_EXPRESSIONS:
        kind, expr = NAMED_EXPRESSIONS[expr]
    spec = EnumSpec(kind, args.max_n, modulo_iso=not args.labeled)
    result = find_witness(expr, spec, budget=args.budget, config=_config(args, max_n=args.max_n))

    if not result.found:
        if args.json:
            _emit_json({"status": "exhausted", "examined": result.examined, "max_n": result.max_n})
        else:
            print(f"exhausted: no witness among {result.examined} structures up to n={result.max_n}")
        return EXIT_NEGATIVE

    document = serialize_structure(result.witness)
    if args.out:
        Path(args.out).write_text(document, encoding="utf-8")
        logger.info("witness written to %s", args.out)
    if args.json:
        _emit_json(
            {
                "status": "witness",
                "examined": result.examined,
                "canonical": result.canonical.hex(),
                "structure": to_document(result.witness),
            }
        )
        return EXIT_OK
    print(f"canonical: {result.canonical.hex()}")
    print(f"witness: {describe(result.witness)}")
    if not args.out:
        sys.stdout.write(document)
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    config = _config(args, max_n=args.max_n, samples=args.samples, seed=args.seed)
    report = run_audit(config, sections=args.section or None)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render_text())
    return EXIT_OK if report.violations == 0 else EXIT_NEGATIVE


def cmd_enumerate(args: argparse.Namespace) -> int:
    spec = EnumSpec(
        args.kind,
        args.n,
        n_y=args.n_y,
        modulo_iso=args.modulo_iso,
        nonempty=args.nonempty,
    )
    total = count(spec)
    if args.json:
        _emit_json({"kind": spec.kind, "n": spec.n, "modulo_iso": spec.modulo_iso, "count": total})
    else:
        print(total)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    if args.dot and args.json:
        raise OrderTopoError("--dot and --json are mutually exclusive")
    parsed = load_structure(args.file)
    if args.json:
        sys.stdout.write(serialize_structure(parsed.structure))
    else:
        sys.stdout.write(to_dot(parsed.structure, specialization=args.specialization))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    result = run_oracle(args.name, args.n)
    if args.json:
        _emit_json(
            {"name": result.name, "n": result.n, "fast": result.fast, "oracle": result.oracle, "agree": result.agree}
        )
    else:
        print(result.render())
    return EXIT_OK if result.agree else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v info, -vv debug)",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker processes for search and audit sweeps (default: 1)",
    )
    common.add_argument(
        "--progress",
        action="store_true",
        help="Show progress bars on stderr",
    )
    common.add_argument(
        "--json",
        action="store_true",
        help="Emit the JSON report form",
    )

    parser = argparse.ArgumentParser(
        prog="ordertopo",
        description="Order topology on finite topologized posets and semilattices",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Check command
    check_parser = subparsers.add_parser(
        "check",
        parents=[common],
        help="Evaluate predicates on a structure file",
        epilog="Predicates: " + ", ".join(REGISTRY),
    )
    check_parser.add_argument("file", help="Structure file (JSON)")
    check_parser.add_argument("props", nargs="*", help="Predicate names (default: all applicable)")
    check_parser.add_argument(
        "--all",
        action="store_true",
        help="Evaluate every predicate applicable to the structure",
    )
    check_parser.set_defaults(handler=cmd_check)

    # Search command
    search_parser = subparsers.add_parser(
        "search",
        parents=[common],
        help="Find the first structure satisfying an expression",
        epilog="Named expressions: " + ", ".join(NAMED_EXPRESSIONS),
    )
    search_parser.add_argument("expr", help="Predicate expression, e.g. 'updown_closed & !pospace'")
    search_parser.add_argument(
        "--kind",
        choices=SEARCH_KINDS,
        default="topo_poset",
        help="Structure kind to search (default: topo_poset)",
    )
    search_parser.add_argument(
        "--max-n",
        type=int,
        default=3,
        help="Largest carrier size searched (default: 3)",
    )
    search_parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="Give up after this many structures (default: unbounded)",
    )
    search_parser.add_argument("--out", default=None, help="Write the witness to this file")
    search_parser.add_argument(
        "--labeled",
        action="store_true",
        help="Search labeled structures instead of one per isomorphism class",
    )
    search_parser.set_defaults(handler=cmd_search)

    # Audit command
    audit_parser = subparsers.add_parser("audit", parents=[common], help="Run the exhaustive audits")
    audit_parser.add_argument(
        "--max-n",
        type=int,
        default=3,
        help="Largest carrier size audited (default: 3)",
    )
    audit_parser.add_argument(
        "--section",
        action="append",
        choices=list(AUDITS),
        help="Audit section to run; repeatable (default: all)",
    )
    audit_parser.add_argument(
        "--samples",
        type=int,
        default=100_000,
        help="Sampled four-point instances for the degeneracy audit (default: 100000)",
    )
    audit_parser.add_argument("--seed", type=int, default=0, help="Sampling seed (default: 0)")
    audit_parser.set_defaults(handler=cmd_audit)

    # Enumerate command
    enumerate_parser = subparsers.add_parser("enumerate", parents=[common], help="Count structures")
    enumerate_parser.add_argument("--kind", choices=KINDS, required=True, help="Structure kind")
    enumerate_parser.add_argument("--n", type=int, required=True, help="Carrier size (X for pairs)")
    enumerate_parser.add_argument("--n-y", type=int, default=None, help="Codomain size for pair kinds (default: n)")
    enumerate_parser.add_argument(
        "--modulo-iso",
        action="store_true",
        help="Count isomorphism classes",
    )
    enumerate_parser.add_argument(
        "--nonempty",
        action="store_true",
        help="Multimorphisms with nonempty values only",
    )
    enumerate_parser.set_defaults(handler=cmd_enumerate)

    # Export command
    export_parser = subparsers.add_parser("export", parents=[common], help="Export a structure file")
    export_parser.add_argument("file", help="Structure file (JSON)")
    export_parser.add_argument(
        "--dot",
        action="store_true",
        help="DOT digraph of the Hasse diagram (the default format; excludes --json)",
    )
    export_parser.add_argument(
        "--specialization",
        action="store_true",
        help="Also emit the specialization preorder of the topology",
    )
    export_parser.set_defaults(handler=cmd_export)

    # Oracle command
    oracle_parser = subparsers.add_parser(
        "oracle", parents=[common], help="Diff a brute-force oracle against the fast path"
    )
    oracle_parser.add_argument("--name", choices=list(ORACLES), required=True, help="Oracle name")
    oracle_parser.add_argument("--n", type=int, required=True, help="Carrier size")
    oracle_parser.set_defaults(handler=cmd_oracle)

    # Version command
    subparsers.add_parser("version", help="Show version")

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "version":
        print(f"ordertopo {__version__}")
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_NEGATIVE

    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except CapacityExceeded as exc:
        return _fail(args, exc, EXIT_CAPACITY)
    except OrderTopoError as exc:
        return _fail(args, exc, EXIT_INPUT)


def _fail(args: argparse.Namespace, exc: OrderTopoError, code: int) -> int:
    logger.debug("command %s failed", args.command, exc_info=exc)
    if args.json:
        _emit_json({"status": "error", "message": str(exc), "exit_code": code})
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
