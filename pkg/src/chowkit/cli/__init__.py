"""Command line: ``chowkit verify <suite> ...``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on input
errors (unreadable or invalid model files, bad parameters).
"""
from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path

from ..models.base import ConfigError, CurveConfig, K3Config
from .parser import ModelSemanticError, ModelSyntaxError, format_model, parse_model_file
from .report import SCHEMA_VERSION, VerificationReport, emit
from .suites import SUITES, SuiteError, SuiteSpec, run_suite

__all__ = ["main", "parse_model_file", "format_model", "run_suite", "emit", "SuiteSpec",
           "VerificationReport", "SCHEMA_VERSION", "SUITES", "load_model_file"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def bundled_models() -> list:
    return sorted(p.name for p in resources.files("chowkit.data").iterdir() if p.name.endswith(".model"))


def load_model_file(name: str):
    """Parse a model file by path, falling back to the bundled data files."""
    path = Path(name)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
    else:
        res = resources.files("chowkit.data").joinpath(path.name)
        if not res.is_file():
            raise InputError(f"model file {name!r} not found (bundled: {', '.join(bundled_models())})")
        text = res.read_text(encoding="utf-8")
    try:
        return parse_model_file(text)
    except (ModelSyntaxError, ModelSemanticError) as exc:
        raise InputError(f"{name}: {exc}") from None


def resolve_seed(cli_seed: int | None, environ=os.environ) -> int:
    """``CHOWKIT_SEED`` overrides ``--seed``; default 0."""
    env = environ.get("CHOWKIT_SEED")
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError:
            raise InputError(f"CHOWKIT_SEED must be an integer, got {env!r}") from None
    return 0 if cli_seed is None else cli_seed


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chowkit", description="Exact verification of Chow-ring models.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--k3", action="append", metavar="FILE",
                   help="K3 model file (repeatable; default: the bundled rho = 1, 2, 3 lattices)")
    v.add_argument("--genus", type=int)
    v.add_argument("--degree", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--report", choices=("json", "markdown"), default="json")
    v.add_argument("--out", metavar="FILE")
    v.add_argument("--seed", type=int)
    f = sub.add_parser("format", help="parse a model file and print its canonical form")
    f.add_argument("file")
    sub.add_parser("models", help="list the bundled model files")
    return ap


def _spec(args) -> SuiteSpec:
    k3 = []
    for name in args.k3 or []:
        obj = load_model_file(name)
        if not isinstance(obj, K3Config):
            raise InputError(f"{name}: expected a k3 block, got {type(obj).__name__}")
        k3.append((Path(name).name, obj))
    curve = None
    if (args.genus is None) != (args.degree is None):
        raise InputError("--genus and --degree must be given together")
    if args.genus is not None:
        try:
            curve = CurveConfig(args.genus, args.degree)
        except ConfigError as exc:
            raise InputError(str(exc)) from None
    try:
        return SuiteSpec(args.suite, k3, curve, args.r, resolve_seed(args.seed))
    except SuiteError as exc:
        raise InputError(str(exc)) from None


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    try:
        if args.command == "models":
            print("\n".join(bundled_models()))
            return EXIT_OK
        if args.command == "format":
            sys.stdout.write(format_model(load_model_file(args.file)))
            return EXIT_OK
        spec = _spec(args)
    except (InputError, ConfigError) as exc:
        print(f"chowkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = run_suite(spec)
    text = emit(report, args.report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_FAIL


def entry_point():
    sys.exit(main())
