#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Argument parser functions."""

import argparse
import os

from jordannorm.config.defaults import _assert_and_infer_cfg, get_cfg

COMMANDS = (
    "norm",
    "cb-example",
    "gns",
    "js-validate",
    "js-eval",
    "js-sum",
    "witness-find",
    "witness-check",
    "factorize-little",
    "factorize-bilinear",
    "split4",
    "positive",
    "roundtrip-positive",
    "ratio-scan",
)


def parse_dims(text):
    """
    "2,3" -> [2, 3].
    """
    try:
        dims = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "Block sizes must look like 2,3, got {!r}".format(text)
        )
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(
            "Block sizes must be positive, got {!r}".format(text)
        )
    return dims


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jordannorm",
        description="Jordan-Stinespring factorizations and Grothendieck "
        "witnesses for finite dimensional C*-algebras.",
    )
    parser.add_argument("command", choices=COMMANDS, help="Subcommand to run")
    parser.add_argument(
        "--input",
        action="append",
        default=[],
        help="JSON input file of the subcommand, repeat for several",
        type=str,
    )
    parser.add_argument(
        "--output",
        help="Path of the JSON report, standard output if omitted",
        default=None,
        type=str,
    )
    parser.add_argument(
        "--seed", help="Base random seed", default=None, type=int
    )
    parser.add_argument(
        "--restarts",
        help="Random restarts of the norm estimation",
        default=None,
        type=int,
    )
    parser.add_argument(
        "--tol",
        help="Check tolerance, overrides the residual tolerances of the "
        "subcommand",
        default=None,
        type=float,
    )
    parser.add_argument(
        "--n",
        help="Matrix size of cb-example, instance count of ratio-scan",
        default=None,
        type=int,
    )
    parser.add_argument(
        "--dims",
        help="Block sizes of the algebra, e.g. 2,3",
        default=None,
        type=parse_dims,
    )
    parser.add_argument(
        "--cfg",
        dest="cfg_file",
        help="Path to the config file",
        default=None,
        type=str,
    )
    return parser


def parse_args(argv=None):
    """
    Parse the following arguments for the jordannorm command line.
    Args:
        command (str): the subcommand.
        input (list): JSON input files.
        output (str): path of the JSON report.
        seed, restarts, tol, n, dims: overrides folded into the config.
        cfg (str): path to the config file.
        opts (argument): provide additional options from the command line, it
            overwrites the config loaded from file.
    """
    parser = build_parser()
    args, opts = parser.parse_known_args(argv)
    # Trailing KEY VALUE pairs, see jordannorm/config/defaults.py.
    flags = [o for o in opts if o.startswith("-")]
    if flags:
        parser.error("unrecognized arguments: {}".format(" ".join(flags)))
    args.opts = opts
    return args


def load_config(args):
    """
    Given the arguments, load and initialize the configs.
    Args:
        args (argument): arguments includes `cfg_file`, `opts` and the
            override flags.
    """
    # Setup cfg.
    cfg = get_cfg()
    # Load config from cfg.
    if args.cfg_file is not None:
        cfg.merge_from_file(args.cfg_file)
    # Load config from command line, overwrite config from opts.
    if args.opts:
        cfg.merge_from_list(args.opts)

    # Inherit parameters from args.
    if args.seed is not None:
        cfg.RNG_SEED = args.seed
    if args.restarts is not None:
        cfg.NORM.RESTARTS = args.restarts
    if args.tol is not None:
        cfg.GNS.TOL = args.tol
        cfg.JSREP.TOL = args.tol
        cfg.WITNESS.TOL = args.tol
        cfg.FACTORIZE.RESIDUAL_TOL = args.tol
    if args.n is not None:
        cfg.CB_EXAMPLE.N = args.n
        cfg.RATIO_SCAN.COUNT = args.n
    if args.dims is not None:
        cfg.ALGEBRA.DIMS = args.dims
    if args.output is not None:
        cfg.OUTPUT_DIR = os.path.dirname(os.path.abspath(args.output))
    return _assert_and_infer_cfg(cfg)
