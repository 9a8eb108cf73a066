"""Command-line front end.

Exit codes: 0 success, 2 validation error, 1 I/O failure. Diagnostics go to
standard error; reports go to standard output or --out files.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .appraisal import ScenarioEvaluationError, evaluate, sweep
from .baseline import load_baseline
from .money import MoneyError, parse_decimal
from .report import (
    TABLE_NAMES,
    build_report,
    build_sweep_report,
    export_tables,
    render_report_json,
    render_report_markdown,
    render_sweep,
)
from .scenario import Diagnostic, Scenario, Severity, load_scenario, validate

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2


def _print_diagnostics(diagnostics: Sequence[Diagnostic], stream=None) -> None:
    stream = stream if stream is not None else sys.stderr
    for d in diagnostics:
        print(str(d), file=stream)


def _load(args: argparse.Namespace) -> tuple[Scenario | None, list[Diagnostic], int]:
    """Resolve --scenario/--baseline into a parsed scenario."""
    if args.baseline:
        try:
            scenario, diagnostics = load_baseline()
        except OSError as exc:
            print(f"error: cannot read baseline: {exc}", file=sys.stderr)
            return None, [], EXIT_IO
    else:
        path = Path(args.scenario)
        try:
            scenario, diagnostics = load_scenario(path)
        except OSError as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return None, [], EXIT_IO
    if scenario is None:
        return None, diagnostics, EXIT_VALIDATION
    return scenario, diagnostics, EXIT_OK


def _write_out(out_dir: Path, name: str, text: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(text, encoding="utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    scenario, diagnostics, code = _load(args)
    if code == EXIT_IO:
        return code
    all_diagnostics = list(diagnostics)
    if scenario is not None:
        all_diagnostics += validate(scenario)
    _print_diagnostics(all_diagnostics, stream=sys.stdout)
    errors = [d for d in all_diagnostics if d.severity is Severity.ERROR]
    if errors:
        return EXIT_VALIDATION
    print("ok")
    return EXIT_OK


def cmd_appraise(args: argparse.Namespace) -> int:
    scenario, diagnostics, code = _load(args)
    if scenario is None:
        _print_diagnostics(diagnostics)
        return code
    try:
        ev = evaluate(scenario)
    except ScenarioEvaluationError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_VALIDATION
    report = build_report(ev, scenario)
    out_dir = Path(args.out) if args.out else None
    try:
        if args.format == "json":
            text = render_report_json(report)
            if out_dir is None:
                sys.stdout.write(text)
            else:
                _write_out(out_dir, "report.json", text)
        elif args.format == "md":
            text = render_report_markdown(report)
            if out_dir is None:
                sys.stdout.write(text)
            else:
                _write_out(out_dir, "report.md", text)
        else:  # csv: the seven table documents
            if out_dir is None:
                print("error: --format csv requires --out DIR", file=sys.stderr)
                return EXIT_VALIDATION
            for name, text in export_tables(report, "csv").items():
                _write_out(out_dir, f"{name}.csv", text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_tables(args: argparse.Namespace) -> int:
    scenario, diagnostics, code = _load(args)
    if scenario is None:
        _print_diagnostics(diagnostics)
        return code
    try:
        ev = evaluate(scenario)
    except ScenarioEvaluationError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_VALIDATION
    report = build_report(ev, scenario)
    exports = export_tables(report, args.format)
    extension = {"json": "json", "csv": "csv", "md": "md"}[args.format]
    try:
        if args.out is None:
            for name in TABLE_NAMES:
                sys.stdout.write(exports[name])
                sys.stdout.write("\n")
        else:
            for name in TABLE_NAMES:
                _write_out(Path(args.out), f"{name}.{extension}", exports[name])
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _sweep_values(args: argparse.Namespace) -> list[Fraction]:
    if args.values:
        return [parse_decimal(v) for v in args.values.split(",")]
    if args.from_value is None or args.to_value is None or args.step is None:
        raise MoneyError("provide --values or --from/--to/--step")
    start = parse_decimal(args.from_value)
    stop = parse_decimal(args.to_value)
    step = parse_decimal(args.step)
    if step <= 0:
        raise MoneyError("--step must be positive")
    values = []
    current = start
    while current <= stop:
        values.append(current)
        current += step
    if not values:
        raise MoneyError("empty sweep range")
    return values


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario, diagnostics, code = _load(args)
    if scenario is None:
        _print_diagnostics(diagnostics)
        return code
    try:
        values = _sweep_values(args)
    except MoneyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        results = sweep(scenario, args.param, values)
    except (ValueError, ScenarioEvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    report = build_sweep_report(args.param, results, scenario.options.rounding)
    sys.stdout.write(render_sweep(report, args.format))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import socket

    import uvicorn

    from .server import create_app

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.bind, args.port))
        probe.close()
    except OSError as exc:
        print(f"error: cannot bind {args.bind}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_IO
    static = Path(args.static) if args.static else None
    uvicorn.run(create_app(static_dir=static), host=args.bind, port=args.port, log_level="warning")
    return EXIT_OK


def _add_scenario_args(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", metavar="PATH", help="scenario JSON file")
    source.add_argument("--baseline", action="store_true", help="use the bundled baseline scenario")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roi-forge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a scenario")
    _add_scenario_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("appraise", help="evaluate a scenario and write the report")
    _add_scenario_args(p)
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--out", metavar="DIR", help="write files here instead of stdout")
    p.set_defaults(func=cmd_appraise)

    p = sub.add_parser("tables", help="export the seven table documents")
    _add_scenario_args(p)
    p.add_argument("--format", choices=["json", "csv", "md"], default="csv")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("sweep", help="re-evaluate over a range of one numeric field")
    _add_scenario_args(p)
    p.add_argument("--param", required=True, metavar="PATH", help="e.g. enrollment.growth")
    p.add_argument("--values", metavar="LIST", help="comma-separated decimal values")
    p.add_argument("--from", dest="from_value", metavar="A")
    p.add_argument("--to", dest="to_value", metavar="B")
    p.add_argument("--step", metavar="S")
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the stateless HTTP service")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--static", metavar="DIR", help="also serve this directory at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = args.func(args)
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
