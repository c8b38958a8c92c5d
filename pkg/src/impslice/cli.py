"""Command-line front end.

Subcommands: ``run``, ``trace``, ``fwd``, ``bwd``, ``check``, ``serve``.
Exit codes: 0 ok, 1 parse error (or unreadable file), 2 evaluation error,
3 fuel exhausted, 4 lattice/criterion mismatch (also a failed law check),
5 enumeration size exceeded.

States, criteria, and partial programs may be given inline or as a path
to a file holding the same text; an argument that names an existing file
is read from disk.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import (CriterionMismatch, EvalError, FuelExhausted, ImpError,
                     JoinError, LatticeMismatch, ParseError, SizeExceeded)
from .jsonio import (check_report_to_json, derivation_to_json,
                     partial_state_to_json, run_result_to_json,
                     slice_outcome_to_json)
from .lattice import check_prefix
from .oracle import DEFAULT_SIZE_BOUND, check_connection
from .parser import (parse_command, parse_partial_command,
                     parse_partial_state, parse_state)
from .printer import hole_spans, render, render_trace
from .slicer import bwd_cmd, fwd_cmd
from .tracer import DEFAULT_FUEL, eval_cmd, trace_stats


def _arg_text(value: str) -> str:
    """Inline text, or the contents of the file the argument names."""
    if os.path.exists(value):
        return Path(value).read_text(encoding="utf-8")
    return value


def _load_derivation(args):
    program = parse_command(Path(args.program).read_text(encoding="utf-8"))
    state = parse_state(_arg_text(args.state))
    return eval_cmd(state, program, args.fuel)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_run(args) -> int:
    derivation = _load_derivation(args)
    _emit(args, run_result_to_json(derivation), render(derivation.output))
    return 0


def cmd_trace(args) -> int:
    derivation = _load_derivation(args)
    if args.format == "json":
        print(json.dumps(derivation_to_json(derivation), indent=2))
    else:
        stats = trace_stats(derivation)
        print(render_trace(derivation))
        print(f"# assignments: {stats.assignments}, "
              f"loop iterations: {stats.loop_iterations}, "
              f"loop conditions: {stats.loop_conditions}")
    return 0


def cmd_bwd(args) -> int:
    derivation = _load_derivation(args)
    criterion = parse_partial_state(_arg_text(args.criterion))
    outcome = bwd_cmd(derivation.trace, criterion)
    spans = hole_spans(derivation.program, outcome.program_slice)
    _emit(args, slice_outcome_to_json(outcome, spans),
          f"program slice: {render(outcome.program_slice)}\n"
          f"input slice:   {render(outcome.input_slice)}")
    return 0


def cmd_fwd(args) -> int:
    derivation = _load_derivation(args)
    partial_program = parse_partial_command(_arg_text(args.partial_program))
    partial_state = parse_partial_state(_arg_text(args.partial_state))
    check_prefix(partial_program, derivation.program)
    result = fwd_cmd(derivation.trace, partial_state, partial_program)
    _emit(args, partial_state_to_json(result), render(result))
    return 0


def _check_one(program_path: Path, state_text: str, args):
    program = parse_command(program_path.read_text(encoding="utf-8"))
    state = parse_state(state_text)
    derivation = eval_cmd(state, program, args.fuel)
    return check_connection(derivation, args.bound, label=program_path.name)


def _print_report(report, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(check_report_to_json(report), indent=2))
        return
    print(f"{report.label}: lattice sizes {report.input_pair_size} x "
          f"{report.output_size}, {report.wall_time_s:.2f}s")
    for name, law in report.laws.items():
        verdict = "holds" if law.holds else f"FAILS: {law.counterexample}"
        print(f"  {name:<20} {verdict} ({law.checked} checks)")


def cmd_check(args) -> int:
    target = Path(args.program)
    if target.is_dir():
        reports = []
        exceeded = []
        rows = []
        for program_path in sorted(target.glob("*.imp")):
            state_path = program_path.with_suffix(".state")
            try:
                report = _check_one(program_path,
                                    state_path.read_text(encoding="utf-8"),
                                    args)
            except SizeExceeded as err:
                exceeded.append(program_path.name)
                rows.append((program_path.name, f"size exceeded ({err.size})"))
                continue
            reports.append(report)
            rows.append((program_path.name,
                         "holds" if report.holds else "FAILS"))
        if args.format == "json":
            print(json.dumps({
                "schema_version": 1,
                "reports": [check_report_to_json(r) for r in reports],
                "size_exceeded": exceeded,
            }, indent=2))
        else:
            width = max((len(name) for name, _ in rows), default=4)
            for name, verdict in rows:
                print(f"{name:<{width}}  {verdict}")
        if exceeded:
            return 5
        return 0 if all(r.holds for r in reports) else 4
    report = _check_one(target, _arg_text(args.state), args)
    _print_report(report, args.format)
    return 0 if report.holds else 4


def cmd_serve(args) -> int:
    from .service import serve

    ui_dir = args.ui
    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    serve(port=args.port, ui_dir=ui_dir)
    return 0


def _add_io_arguments(parser, state_required=True):
    parser.add_argument("program", help="path to the .imp program file")
    parser.add_argument("--state", required=state_required,
                        help="input state, inline or a file path")
    parser.add_argument("--fuel", type=int, default=DEFAULT_FUEL,
                        help="command-step budget before giving up")
    parser.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="impslice",
        description="Run, trace, and dynamically slice Imp programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a program and print the final state")
    _add_io_arguments(run)
    run.set_defaults(handler=cmd_run)

    trace = sub.add_parser("trace", help="print the recorded execution trace")
    _add_io_arguments(trace)
    trace.set_defaults(handler=cmd_trace)

    bwd = sub.add_parser("bwd", help="backward-slice against a criterion state")
    _add_io_arguments(bwd)
    bwd.add_argument("--criterion", required=True,
                     help="partial output state, e.g. 'x = _, y = 1'")
    bwd.set_defaults(handler=cmd_bwd)

    fwd = sub.add_parser("fwd", help="forward-slice a partial program")
    _add_io_arguments(fwd)
    fwd.add_argument("--partial-program", required=True,
                     help="partial program text or file (holes as _)")
    fwd.add_argument("--partial-state", required=True,
                     help="partial input state (holes as _)")
    fwd.set_defaults(handler=cmd_fwd)

    check = sub.add_parser(
        "check", help="certify the slicing adjunction by enumeration")
    check.add_argument("program",
                       help=".imp file, or a directory of .imp/.state pairs")
    check.add_argument("--state", default="",
                       help="input state (single-file mode)")
    check.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    check.add_argument("--bound", type=int, default=DEFAULT_SIZE_BOUND,
                       help="combined lattice size ceiling")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.set_defaults(handler=cmd_check)

    serve = sub.add_parser("serve", help="start the local HTTP service")
    serve.add_argument("--port", type=int, default=8765)
    serve.add_argument("--ui", default=None,
                       help="directory of static UI assets to serve")
    serve.set_defaults(handler=cmd_serve)

    return parser


def _exit_code(err: ImpError) -> int:
    if isinstance(err, ParseError):
        return 1
    if isinstance(err, EvalError):
        return 2
    if isinstance(err, FuelExhausted):
        return 3
    if isinstance(err, (LatticeMismatch, CriterionMismatch, JoinError)):
        return 4
    if isinstance(err, SizeExceeded):
        return 5
    return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ImpError as err:
        print(f"error: {err}", file=sys.stderr)
        return _exit_code(err)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
