"""
Command line entry point: ``sourcelab validate|run|emit``.

Every failure exits with the ``code`` of the error raised, so scripts can
tell a bad config (2) from a failed stage (3) or a missing series (4).
"""

import argparse
import logging
import sys

from cdislogging import get_logger

from sourcelab import settings
from sourcelab.errors import SourceLabError
from sourcelab.scripting.config import load_config, validate_config
from sourcelab.scripting.experiment import SERIES, RunManifest, emit_plot_data, run

LOG_LEVELS = ("debug", "info", "warning", "error", "critical")

#: loggers that are not named after a ``sourcelab`` module
NAMED_LOGGERS = ("ExperimentRunner", "OutputWriter")


def set_log_level(level):
    names = [
        name
        for name in logging.Logger.manager.loggerDict
        if name.startswith("sourcelab") or name in NAMED_LOGGERS
    ]
    for name in set(names) | set(NAMED_LOGGERS) | {"sourcelab"}:
        get_logger(name, log_level=level)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sourcelab",
        description="Far-field correlation experiments for random wave sources",
    )
    parser.add_argument(
        "--log-level", choices=LOG_LEVELS, default=settings.LOG_LEVEL
    )
    subparsers = parser.add_subparsers(dest="action")
    subparsers.required = True

    validate = subparsers.add_parser("validate", help="check an experiment config")
    validate.add_argument("config")

    run_parser = subparsers.add_parser("run", help="run an experiment config")
    run_parser.add_argument("config")

    emit = subparsers.add_parser("emit", help="write a tidy CSV for one stored series")
    emit.add_argument("manifest", help="manifest file or run output directory")
    emit.add_argument("--series", required=True, choices=sorted(SERIES))
    emit.add_argument("--output", default=None)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    set_log_level(args.log_level)
    logger = get_logger("sourcelab", log_level=args.log_level)
    try:
        if args.action == "validate":
            validate_config(load_config(args.config))
            print("{}: ok".format(args.config))
        elif args.action == "run":
            manifest = run(load_config(args.config))
            print(manifest.path)
        elif args.action == "emit":
            print(emit_plot_data(RunManifest.load(args.manifest), args.series, args.output))
    except SourceLabError as e:
        logger.error("{} failed: {}".format(args.action, e.message))
        return e.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
