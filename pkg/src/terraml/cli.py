"""Command-line entry point.

Subcommands: ``run``, ``validate``, ``inspect``, ``predict`` — each takes a
run-configuration JSON file. Exit codes: 0 ok, 1 task failure, 2 config or
CLI error. Config errors are printed as messages, never stack traces.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .core.run import instantiate_run
from .core.schema import load_config_file, validate_config
from .errors import TerramlError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terraml",
        description="Config-driven machine-learning workflows for "
        "Earth-observation image classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "validate a config and execute its task"),
        ("validate", "validate a config and print the defaulted form"),
        ("inspect", "run a dataset-inspection config (task must be InspectTask)"),
        ("predict", "run a batch-prediction config (task must be PredictTask)"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("config", help="path to a run-configuration JSON file")
    return parser


_EXPECTED_TASK = {"inspect": "InspectTask", "predict": "PredictTask"}


def _print_summary(summary: dict) -> None:
    for key, value in summary.items():
        if isinstance(value, float):
            print(f"{key}: {value:.6f}")
        else:
            print(f"{key}: {value}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stdout)

    try:
        cfg = validate_config(load_config_file(args.config))
    except TerramlError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        print(cfg.to_json())
        return 0

    expected = _EXPECTED_TASK.get(args.command)
    if expected and cfg.task.classname != expected:
        print(
            f"config error: {args.command} expects task {expected}, "
            f"got {cfg.task.classname}",
            file=sys.stderr,
        )
        return 2

    try:
        task = instantiate_run(cfg)
    except TerramlError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    result = task.run()
    if not result.ok:
        print(f"task failed: {result.summary.get('error', 'unknown error')}", file=sys.stderr)
        return 1
    print(f"task {cfg.task.classname} finished")
    _print_summary(result.summary)
    for artifact in result.artifacts:
        print(f"artifact ({artifact.kind}): {artifact.path}")
    return 0


def cli_main(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
