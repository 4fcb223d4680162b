#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Wrapper to run one jordannorm subcommand and write its report."""
import sys

from fvcore.common.timer import Timer

import jordannorm.utils.logging as logging
import jordannorm.utils.serialization as su
from jordannorm.tools.commands import COMMAND_REGISTRY
from jordannorm.utils.parser import load_config, parse_args

logger = logging.get_logger(__name__)

# Exit statuses.
EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def run(args):
    """
    Run the subcommand named by `args.command`.
    Args:
        args (argument): parsed command line, see `parse_args`.
    Returns:
        status (int): 0 if every check passed, 1 if a check failed and 2 on
            invalid configuration or input.
    """
    try:
        cfg = load_config(args)
    except (AssertionError, KeyError, ValueError) as e:
        print("Invalid configuration: {}".format(e), file=sys.stderr)
        return EXIT_INVALID

    logging.setup_logging(
        cfg.OUTPUT_DIR if args.output is not None else None
    )
    logger.info("Running {} with seed {}".format(args.command, cfg.RNG_SEED))

    timer = Timer()
    command = COMMAND_REGISTRY.get(args.command)
    try:
        report = command(cfg, args)
    except ValueError as e:
        # SchemaError and ShapeError: the input does not fit the command.
        print("Invalid input: {}".format(e), file=sys.stderr)
        return EXIT_INVALID

    doc = report.as_dict()
    if args.output is None:
        sys.stdout.write(su.dumps(doc) + "\n")
    else:
        su.save_json(doc, args.output)
        logger.info("Report written to {}".format(args.output))
    stats = {
        "command": args.command,
        "checks": len(report.checks),
        "failed": [c["name"] for c in report.checks if not c["passed"]],
        "time": timer.seconds(),
    }
    logging.log_json_stats(stats, tag="run_stats")
    return EXIT_PASSED if report.passed else EXIT_FAILED


def main(argv=None):
    """
    Main function of the `jordannorm` console script.
    """
    args = parse_args(argv)
    sys.exit(run(args))


if __name__ == "__main__":
    main()
