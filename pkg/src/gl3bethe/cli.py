"""Command-line interface: configuration ingestion, suite execution, reports.

    gl3bethe run [--config FILE] [--suite NAME]... [--seed N] [--length L]
                 [--c Z] [--kappa Z] [--beta Z] [--phi Z] [--tol X]
                 [--out PATH] [--format FMT]
    gl3bethe list

Complex parameters accept mathematician's notation ("0.4+0.1i", "i").
Command-line flags override config-file fields.  Exit codes: 0 all checks
passed, 1 at least one check failed, 2 configuration error, 3 solver
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from .report import ConfigError, RunConfig, VerificationReport, parse_complex
from .solver import ConvergenceError
from .suites import run_suites, suite_info

__all__ = ["main", "build_parser"]

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NO_CONVERGENCE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gl3bethe",
        description="Certify nested-Bethe-ansatz identities on finite inhomogeneous chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute verification suites and write a report")
    run_p.add_argument("--config", help="JSON config file; flags override its fields")
    run_p.add_argument("--suite", action="append", default=None,
                       help="suite name (repeatable); default: all")
    run_p.add_argument("--seed", type=int, default=None, help="master seed")
    run_p.add_argument("--length", type=int, default=None, help="chain length L")
    run_p.add_argument("--c", default=None, help="coupling constant (complex)")
    run_p.add_argument("--kappa", default=None, help="second diagonal twist entry (complex, not 0 or 1)")
    run_p.add_argument("--beta", default=None, help="off-diagonal twist strength (complex, nonzero)")
    run_p.add_argument("--phi", default=None, help="first diagonal twist entry (complex, nonzero)")
    run_p.add_argument("--tol", type=float, default=None, help="generic relative tolerance")
    run_p.add_argument("--out", default=None, help="output path (default: stdout)")
    run_p.add_argument("--format", default=None, choices=["json-report", "csv-summary", "human-text"])

    sub.add_parser("list", help="list available suites with their check vocabularies")
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must contain a JSON object")
    config = RunConfig.from_dict(data)

    if args.suite:
        config.suites = tuple(args.suite)
    if args.seed is not None:
        config.seed = args.seed
    if args.length is not None:
        config.length = args.length
    for name in ("c", "kappa", "beta", "phi"):
        val = getattr(args, name)
        if val is not None:
            setattr(config, name, parse_complex(val))
    if args.tol is not None:
        config.tol_relative = args.tol
    if args.out is not None:
        config.output = args.out
    if args.format is not None:
        config.format = args.format

    from .suites import SUITES

    config.validate(SUITES)
    return config


def _emit(report: VerificationReport) -> None:
    text = report.render()
    if report.config.output:
        with open(report.config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "list":
        for info in suite_info():
            anchors = ", ".join(info["anchors"])
            sys.stdout.write(f"{info['name']:<14} {info['description']}\n")
            sys.stdout.write(f"{'':<14} checks: {anchors}\n")
        return EXIT_PASS

    try:
        config = _load_config(args)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG_ERROR

    try:
        records, timing = run_suites(config)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG_ERROR
    except ConvergenceError as exc:
        sys.stderr.write(f"solver did not converge: {exc}\n")
        return EXIT_NO_CONVERGENCE

    report = VerificationReport(config, records, timing)
    _emit(report)
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
