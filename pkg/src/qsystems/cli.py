"""Command-line entry point for the verification suites.

Subcommands run one suite each (or ``all``); reports are emitted as JSON or
text.  The exit status is 0 exactly when every executed check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .report import combined_report_dict, render_text
from .suites import run_all, run_suite

SUITE_NAMES = ("axioms", "symmetry", "dynamics", "charge", "epr", "bell")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsystems",
        description="Verify the algebraic laws of many-component quantum systems "
        "in finite-dimensional representations.",
    )
    parser.add_argument("--version", action="version", version=f"qsystems {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="{%s,all}" % ",".join(SUITE_NAMES))

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=str, default=None, help="JSON config file")
        p.add_argument("--out", type=str, default=None, help="write the report here")
        p.add_argument("--format", choices=("text", "json"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--tolerance-scale",
            type=float,
            default=1.0,
            help="multiply documented tolerances (exploratory runs only)",
        )

    for name in SUITE_NAMES:
        p = sub.add_parser(name, help=f"run the {name} suite")
        add_common(p)
        if name == "bell":
            p.add_argument(
                "--angles",
                type=str,
                default=None,
                help="four comma-separated analyzer angles: alpha,alpha',beta,beta'",
            )
            p.add_argument(
                "--model",
                type=str,
                default=None,
                choices=("sign-cosine", "narrow-window", "double-frequency"),
                help="run only this hidden-variable model",
            )
            p.add_argument("--samples", type=int, default=None, help="Monte-Carlo samples")
    p_all = sub.add_parser("all", help="run every suite")
    add_common(p_all)
    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ValueError("config must be a JSON object")
    return doc


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "all":
            reports = run_all(config, seed=args.seed, tolerance_scale=args.tolerance_scale)
            doc = combined_report_dict(reports, seed=args.seed, tool_version=__version__)
        else:
            section = dict(config.get(args.command, {}))
            if args.command == "bell":
                if args.angles is not None:
                    section["angles"] = [float(v) for v in args.angles.split(",")]
                if args.model is not None:
                    section["models"] = [args.model]
                if args.samples is not None:
                    section["n_samples"] = args.samples
            doc = run_suite(
                args.command, section, seed=args.seed, tolerance_scale=args.tolerance_scale
            ).to_dict()
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.format == "json":
        rendered = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        rendered = render_text(doc)
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    return 0 if doc["pass"] else 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
