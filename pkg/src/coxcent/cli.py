"""Command line interface for coxcent."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import structlog

from .config import RunConfig, get_settings
from .core.exceptions import ConfigurationError, CoxcentError, InputError
from .core.logging import setup_logging
from .coxeter.graph import Problem, parse_document
from .export.dot import write_dot
from .services.analysis import build_report, render_text, run_pipeline
from .services.oracle import run_oracle
from .services.table_check import render_summary, verify_tables

logger = structlog.get_logger(__name__)


def _edge_list(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [part.strip() for part in text.split(";") if part.strip()]


def _read_problem(path: Path) -> Problem:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", details={"path": str(path)}) from None
    return parse_document(text)


def _add_analysis_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="JSON input document")
    parser.add_argument("--bound", type=int, help="Y_I word-length window")
    parser.add_argument("--json", action="store_true", help="Emit the JSON report")
    parser.add_argument("--dot", type=Path, metavar="DIR", help="Write DOT files to DIR")
    parser.add_argument("--tree-prefer", metavar="EDGELIST", help="';'-separated edge keys v1,...>s")
    parser.add_argument("--tree-avoid", metavar="EDGELIST", help="Edge keys kept out of the tree")


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_settings(
        get_settings(),
        bound_L=getattr(args, "bound", None),
        group_order_cap=getattr(args, "cap", None),
        tree_preference=_edge_list(getattr(args, "tree_prefer", None)),
        tree_avoid=_edge_list(getattr(args, "tree_avoid", None)),
        output="json" if getattr(args, "json", False) else "text",
        dot_dir=getattr(args, "dot", None),
    )


def _analyze(args: argparse.Namespace, centralizer: bool) -> None:
    config = _run_config(args)
    result = run_pipeline(_read_problem(args.file), config)
    report = build_report(result, centralizer=centralizer, normalizer=True)
    if config.dot_dir is not None:
        write_dot(report, config.dot_dir)
    if config.output == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(render_text(report))


def _config() -> None:
    settings = get_settings()
    print("Current Configuration:")
    for name, value in settings.model_dump().items():
        print(f"  {name}: {value}")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    parser = argparse.ArgumentParser(
        prog="coxcent",
        description="Centralizers and normalizers of parabolic subgroups of Coxeter groups",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    analyze_parser = subparsers.add_parser("analyze", help="Decompose Z_W(W_I) and N_W(W_I)")
    _add_analysis_arguments(analyze_parser)

    normalizer_parser = subparsers.add_parser("normalizer", help="Decompose N_W(W_I) only")
    _add_analysis_arguments(normalizer_parser)

    subparsers.add_parser("verify-tables", help="Check every shuttling-tour table row")

    oracle_parser = subparsers.add_parser("oracle", help="Brute-force check for finite W")
    oracle_parser.add_argument("file", type=Path, help="JSON input document")
    oracle_parser.add_argument("--cap", type=int, help="Group order cap")

    subparsers.add_parser("config", help="Show current configuration")

    args = parser.parse_args(argv)
    try:
        setup_logging(get_settings())
    except ConfigurationError as exc:
        print(f"{exc.error_code}: {exc.message}", file=sys.stderr)
        return exc.exit_code

    try:
        if args.command == "analyze":
            _analyze(args, centralizer=True)
        elif args.command == "normalizer":
            _analyze(args, centralizer=False)
        elif args.command == "verify-tables":
            summary = verify_tables(field_max_n=get_settings().FIELD_MAX_N)
            print(render_summary(summary))
            if summary.failures:
                for row in summary.failures:
                    print(f"failed: {row.row}", file=sys.stderr)
                return 1
        elif args.command == "oracle":
            result = run_oracle(_read_problem(args.file), _run_config(args))
            print(result.model_dump_json(indent=2))
            if result.compared and not result.agrees:
                return 4
        elif args.command == "config":
            _config()
        else:
            parser.print_help()
    except CoxcentError as exc:
        logger.debug("command failed", error=exc.error_code, details=exc.details)
        print(f"{exc.error_code}: {exc.message}", file=sys.stderr)
        return exc.exit_code
    return 0


def main() -> None:
    """CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
