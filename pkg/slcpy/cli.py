# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from .config import AnalysisConfig, ConfigError
from .euler import ExpressionError, parse_expression
from .periodic import write_trajectories
from .pipeline import Analysis
from .presets import expectations, preset_config, presets, validate
from argparse import ArgumentParser
import logging
import os
import pandas as pd
from pathlib import Path
import slcpy
import sys

MODE_NAMES = {"ambient": "ambient", "com": "com_reduced"}


def main(arglist=None):
    if arglist:
        arglist = map(str, arglist)
    args = get_parser().parse_args(arglist)
    configure_logging()
    if args.command is None:
        get_parser().print_help(sys.stderr)
        return 1
    commands = {
        "analyze": cmd_analyze,
        "orbits": cmd_orbits,
        "validate": cmd_validate,
        "euler": cmd_euler,
    }
    try:
        return commands[args.command](args)
    except (ValueError, RuntimeError) as error:
        print(f"[slcpy] error: {error}", file=sys.stderr)
        return 1


def configure_logging():
    level = os.environ.get("SLCPY_LOG_LEVEL", "WARNING").upper()
    logger = logging.getLogger("slcpy")
    logger.setLevel(getattr(logging, level, logging.WARNING))
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("[%(name)s] %(levelname)s: %(message)s"))
        logger.addHandler(handler)


def load_config(args):
    if args.config is not None and args.preset is not None:
        raise ConfigError("give either --config or --preset, not both")
    if args.config is not None:
        config = AnalysisConfig.load(args.config)
    elif args.preset is not None:
        config = preset_config(args.preset)
    else:
        raise ConfigError("a configuration is required; use --config PATH or --preset NAME")
    overrides = dict()
    if args.mode is not None:
        overrides["mode"] = MODE_NAMES[args.mode]
    if getattr(args, "amplitudes", None):
        overrides["amplitudes"] = args.amplitudes
    if getattr(args, "modes", None):
        overrides["n_modes"] = args.modes
    return config.with_options(**overrides) if overrides else config


def output_path(args, config, key, default):
    if args.out is not None:
        return Path(args.out) / default
    if key in config.outputs:
        return Path(config.outputs[key])
    return None


def cmd_analyze(args):
    """Orbit, spectra, hypotheses, resonance and certificates; exit code 2 if hypotheses fail"""
    config = load_config(args)
    analysis = Analysis(config)
    report = analysis.report()
    report.summary.to_markdown(sys.stdout, index=False)
    print("")
    if len(report["certificates"]) > 0:
        print("")
        report.certificate_summary.to_markdown(sys.stdout, index=False, floatfmt=".10g")
        print("")
    path = output_path(args, config, "report", "report.json")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        report.to_json(path)
        print(f"\nReport written to {path}", file=sys.stderr)
    if not report.hypotheses_passed:
        failures = ", ".join(analysis.hypotheses.failures)
        print(f"[slcpy] hypotheses not satisfied: {failures}", file=sys.stderr)
        return 2
    return 0


def cmd_orbits(args):
    """Continue and verify the families bifurcating at 1/beta_j0 and export trajectories"""
    config = load_config(args)
    analysis = Analysis(config)
    if not analysis.hypotheses.passed:
        failures = ", ".join(analysis.hypotheses.failures)
        print(f"[slcpy] hypotheses not satisfied: {failures}", file=sys.stderr)
        return 2
    families = analysis.continue_families(
        args.j0, verify=not args.quick, threads=args.threads, progress=args.progress
    )
    summaries = list()
    for family in families:
        summaries.append(family.summary)
        if family.truncated:
            print(f"[slcpy] family truncated: {family.diagnostic}", file=sys.stderr)
    pd.concat(summaries).to_markdown(sys.stdout, index=False, floatfmt=".10g")
    print("")
    directory = output_path(args, config, "trajectories", "trajectories")
    if directory is not None:
        prefix = config.name or "orbit"
        for family in families:
            write_trajectories(analysis.model, family, directory, prefix=prefix)
        print(f"\nTrajectories written to {directory}", file=sys.stderr)
        report_path = output_path(args, config, "report", "report.json")
        if report_path is not None:
            report_path.parent.mkdir(parents=True, exist_ok=True)
            analysis.report().to_json(report_path)
            print(f"Report written to {report_path}", file=sys.stderr)
    return 0


def cmd_validate(args):
    """Pass/fail table of the built-in presets against their expected values"""
    table = validate(names=args.only, continuation=not args.quick)
    table.to_markdown(sys.stdout, index=False)
    print("")
    if args.out is not None:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        path = Path(args.out) / "validation.csv"
        table.to_csv(path, index=False)
        print(f"\nValidation table written to {path}", file=sys.stderr)
    return 0 if (table.Status != "fail").all() else 1


def cmd_euler(args):
    """Evaluate an Euler ring expression and print its canonical form"""
    try:
        print(parse_expression(args.expression))
    except ExpressionError as error:
        print(f"[slcpy] {error}", file=sys.stderr)
        print(f"  {args.expression}\n  {' ' * error.position}^", file=sys.stderr)
        return 1
    return 0


def add_config_arguments(parser):
    parser.add_argument("-c", "--config", metavar="PATH", help="analysis configuration in JSON")
    parser.add_argument(
        "-p",
        "--preset",
        metavar="NAME",
        choices=sorted(presets),
        help=f"built-in configuration; available presets are {', '.join(sorted(presets))}",
    )
    parser.add_argument(
        "-m",
        "--mode",
        choices=sorted(MODE_NAMES),
        help="subspace for the spectral analysis: ambient (full space) or com (centre of mass "
        "fixed at zero); by default the configured mode is used",
    )
    parser.add_argument(
        "-o",
        "--out",
        metavar="DIR",
        help="write the report and other output files to DIR; by default the output locations "
        "of the configuration are used, if any",
    )


def get_parser():
    parser = ArgumentParser(
        description="slcpy: bifurcation of periodic orbits from minimal orbits of planar N-body "
        "potentials"
    )
    parser.add_argument(
        "-v", "--version", action="version", version=f"slcpy v{slcpy.__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")

    analyze = subparsers.add_parser("analyze", help="spectra, hypotheses and certificates")
    add_config_arguments(analyze)

    orbits = subparsers.add_parser("orbits", help="continue and verify bifurcating families")
    add_config_arguments(orbits)
    orbits.add_argument(
        "-j",
        "--j0",
        type=int,
        metavar="K",
        required=True,
        help="index of the frequency beta_K to continue from, counting from the largest",
    )
    orbits.add_argument(
        "-a",
        "--amplitudes",
        type=float,
        nargs="+",
        metavar="A",
        help="increasing amplitudes of the family samples; by default the configured grid",
    )
    orbits.add_argument(
        "--modes", type=int, metavar="M", help="number of Fourier modes; by default M=16"
    )
    orbits.add_argument(
        "-t",
        "--threads",
        type=int,
        metavar="T",
        default=1,
        help="continue up to T branches of a degenerate frequency concurrently; by default T=1",
    )
    orbits.add_argument(
        "--quick",
        action="store_true",
        help="skip the re-integration check of each sample",
    )
    orbits.add_argument("--progress", action="store_true", help="show a progress bar per branch")

    check = subparsers.add_parser("validate", help="check the built-in presets")
    check.add_argument(
        "--only",
        nargs="+",
        metavar="NAME",
        choices=sorted(expectations),
        help=f"run only the named presets; available presets are {', '.join(expectations)}",
    )
    check.add_argument(
        "--quick", action="store_true", help="skip the checks that need family continuation"
    )
    check.add_argument("-o", "--out", metavar="DIR", help="write the table in CSV format to DIR")

    euler = subparsers.add_parser("euler", help="evaluate an Euler ring expression")
    euler.add_argument(
        "expression",
        help="expression with I, X(m), S[k0;(k1,m1),...], parentheses and the operators + - *",
    )
    return parser
