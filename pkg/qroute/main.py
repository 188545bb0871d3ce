"""Command-line entry point: `qroute route | compare | arch | verify`."""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from qroute import __version__
from qroute.arch import Architecture, builtin, list_builtins, load_architecture_file, resolve_durations
from qroute.exceptions import QrouteError, UsageError, VerificationSizeError
from qroute.qasm import emit, parse_file, parse_mapped
from qroute.routing.initial import make_initial_mapping
from qroute.schemas.schemas import (
    BaselineOptions,
    CompareJob,
    DeadlockPolicy,
    InitialKind,
    InitialMappingOptions,
    RouterKind,
    RouterOptions,
)
from qroute.sched import format_schedule, validate_schedule
from qroute.utils.logger import setup_logger
from qroute.utils.reports import dump_report, markdown_table, write_text
from qroute.verify import MAX_STATEVECTOR_QUBITS, compliance_errors, permutation_check, statevector_equiv
from qroute.workers.processors.baseline import BaselineProcessor
from qroute.workers.processors.comet import CometProcessor

logger = logging.getLogger("qroute.main")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 5


def _resolve_arch(args: argparse.Namespace) -> Architecture:
    if getattr(args, "arch_file", None):
        arch = load_architecture_file(args.arch_file)
    elif getattr(args, "arch", None):
        arch = builtin(args.arch)
    else:
        raise UsageError("one of --arch or --arch-file is required")
    if getattr(args, "durations", None) is not None:
        arch = arch.with_durations(resolve_durations(args.durations))
    return arch


def _router_options(args: argparse.Namespace) -> RouterOptions:
    return RouterOptions(use_fine=not args.no_fine, deadlock=DeadlockPolicy(args.deadlock))


def _baseline_options(args: argparse.Namespace) -> BaselineOptions:
    return BaselineOptions(delta=args.baseline_delta)


def _route(args: argparse.Namespace, arch: Architecture, circuit):
    router_options = _router_options(args)
    settings = InitialMappingOptions(
        kind=InitialKind(args.initial), rounds=args.rt_rounds, restarts=args.rt_restarts, seed=args.seed
    )
    initial = make_initial_mapping(circuit, arch, settings, router_options)
    if RouterKind(args.router) is RouterKind.baseline:
        processor = BaselineProcessor(arch, _baseline_options(args))
    else:
        processor = CometProcessor(arch, router_options)
    return processor.process(circuit, initial, decompose=args.decompose_swaps, seed=args.seed)


def cmd_route(args: argparse.Namespace) -> int:
    circuit = parse_file(args.input)
    arch = _resolve_arch(args)
    outcome = _route(args, arch, circuit)
    report = outcome.report

    if args.out:
        write_text(args.out, emit(outcome.schedule.mapped_circuit))
    if args.schedule:
        write_text(args.schedule, format_schedule(outcome.schedule))
    if args.report:
        write_text(args.report, dump_report(report))

    print(
        f"{report.benchmark} on {report.architecture} [{report.router.value}]: "
        f"T_o={report.original_depth} depth={report.weighted_depth} swaps={report.swap_count} "
        f"gates={report.total_gates} cx={report.cx_count}"
    )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    # Configures the Celery app on import.
    from qroute.workers.dispatch import compare

    if not args.arch and not args.arch_file:
        raise UsageError("compare needs at least one --arch or --arch-file")
    template = CompareJob(
        benchmark="",
        architecture="",
        durations=args.durations,
        seed=args.seed,
        rt_rounds=args.rt_rounds,
        rt_restarts=args.rt_restarts,
        router=_router_options(args),
        baseline=_baseline_options(args),
    )
    try:
        report = compare(args.benchmarks, args.arch or [], template, args.arch_file or [])
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    table = markdown_table(report)
    if args.report:
        write_text(args.report, dump_report(report))
    if args.table:
        write_text(args.table, table)
    else:
        print(table, end="")
    return EXIT_OK


def cmd_arch_list(args: argparse.Namespace) -> int:
    for name in list_builtins():
        print(name)
    return EXIT_OK


def cmd_arch_show(args: argparse.Namespace) -> int:
    arch = _resolve_arch(args)
    dist = arch.distances
    print(f"{arch.name}: {arch.describe()}")
    if arch.has_grid:
        rows = 1 + max(r for r, _ in arch.grid.values())
        cols = 1 + max(c for _, c in arch.grid.values())
        print(f"grid: {rows} x {cols}")
    else:
        print("grid: none")
    print(f"diameter: {dist.diameter}")
    print(f"mean distance: {dist.mean_distance:.3f}")
    print("durations: " + " ".join(f"{kind}={cycles}" for kind, cycles in arch.durations.as_dict().items()))
    print("edges: " + " ".join(f"{a}-{b}" for a, b in arch.edge_list))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    original = parse_file(args.input)
    arch: Optional[Architecture] = None
    if args.arch or args.arch_file:
        arch = _resolve_arch(args)

    schedule = None
    if args.routed:
        routed = parse_mapped(Path(args.routed).read_text(encoding="utf-8"), name=Path(args.routed).stem)
    else:
        if arch is None:
            raise UsageError("verify without --routed needs --arch or --arch-file to route first")
        schedule = _route(args, arch, original).schedule
        routed = schedule.mapped_circuit

    failed = False
    permutation = permutation_check(original, schedule if schedule is not None else routed)
    print(permutation.report())
    failed |= not permutation.ok

    if arch is not None:
        errors = compliance_errors(routed, arch)
        if errors:
            print("compliance check failed:")
            for error in errors:
                print(f"  - {error}")
            failed = True
        else:
            print("compliance check passed")
    if schedule is not None:
        violations = validate_schedule(schedule, arch)
        if violations:
            print("schedule check failed:")
            for violation in violations:
                print(f"  - {violation.message}")
            failed = True
        else:
            print("schedule check passed")

    try:
        equivalence = statevector_equiv(original, routed)
    except VerificationSizeError:
        print(f"statevector check skipped: more than {MAX_STATEVECTOR_QUBITS} qubits")
    else:
        print("statevector check passed" if equivalence.ok else f"statevector check failed: {equivalence.message}")
        failed |= not equivalence.ok

    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def _add_arch_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--arch", help="Bundled architecture name, line-N or grid-RxC")
    parser.add_argument("--arch-file", help="Architecture YAML/JSON document")
    parser.add_argument(
        "--durations", default=None, help="'default', 'preset:<name>' or a duration file (default: the architecture's)"
    )


def _add_routing_arguments(parser: argparse.ArgumentParser, compare: bool = False) -> None:
    if not compare:
        parser.add_argument("--router", choices=[k.value for k in RouterKind], default=RouterKind.comet.value)
        parser.add_argument(
            "--initial", choices=[k.value for k in InitialKind], default=InitialKind.reverse_traversal.value
        )
        parser.add_argument("--decompose-swaps", action="store_true", help="Emit swaps as three CX gates")
    parser.add_argument("--rt-rounds", type=int, default=3, help="Reverse-traversal rounds per restart")
    parser.add_argument("--rt-restarts", type=int, default=12, help="Reverse-traversal random restarts")
    parser.add_argument("--seed", type=int, default=42 if compare else None, help="RNG seed")
    parser.add_argument("--baseline-delta", type=float, default=0.001, help="Decay increment of the baseline router")
    parser.add_argument("--no-fine", action="store_true", help="Disable the grid-balance tie-break")
    parser.add_argument(
        "--deadlock", choices=[p.value for p in DeadlockPolicy], default=DeadlockPolicy.forced_swap.value
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qroute", description="Duration-aware qubit routing")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    route = subparsers.add_parser("route", help="Route one circuit")
    route.add_argument("--in", dest="input", required=True, help="OpenQASM 2.0 input")
    route.add_argument("--out", help="Routed OpenQASM output")
    route.add_argument("--report", help="YAML report output")
    route.add_argument("--schedule", help="Schedule listing output")
    _add_arch_arguments(route)
    _add_routing_arguments(route)
    route.set_defaults(func=cmd_route)

    compare = subparsers.add_parser("compare", help="Compare both routers over a benchmark directory")
    compare.add_argument("--benchmarks", default="benchmarks", help="Directory of .qasm files")
    compare.add_argument("--arch", action="append", help="Architecture name (repeatable)")
    compare.add_argument("--arch-file", action="append", help="Architecture YAML/JSON document (repeatable)")
    compare.add_argument("--durations", default=None, help="'default', 'preset:<name>' or a duration file")
    compare.add_argument("--report", help="YAML report output")
    compare.add_argument("--table", help="Markdown table output (default: stdout)")
    _add_routing_arguments(compare, compare=True)
    compare.set_defaults(func=cmd_compare)

    arch = subparsers.add_parser("arch", help="Inspect architectures")
    arch_commands = arch.add_subparsers(dest="arch_command", required=True)
    arch_list = arch_commands.add_parser("list", help="List bundled architectures")
    arch_list.set_defaults(func=cmd_arch_list)
    arch_show = arch_commands.add_parser("show", help="Describe one architecture")
    arch_show.add_argument("arch", nargs="?", help="Architecture name")
    arch_show.add_argument("--arch-file", help="Architecture YAML/JSON document")
    arch_show.add_argument("--durations", default=None)
    arch_show.set_defaults(func=cmd_arch_show)

    verify = subparsers.add_parser("verify", help="Check a routed circuit against its original")
    verify.add_argument("--in", dest="input", required=True, help="Original OpenQASM 2.0 circuit")
    verify.add_argument("--routed", help="Routed file produced by `route --out`; routes first when omitted")
    _add_arch_arguments(verify)
    _add_routing_arguments(verify)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logger("qroute", level="DEBUG" if args.verbose else None)
    try:
        return args.func(args)
    except QrouteError as e:
        logger.error(f"{e.__class__.__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid option: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
