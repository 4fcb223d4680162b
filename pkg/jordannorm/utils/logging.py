#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Logging."""

import decimal
import functools
import logging
import os
import sys

import simplejson
from fvcore.common.file_io import PathManager

_FORMAT = "[%(asctime)s][%(levelname)s] %(name)s: %(lineno)4d: %(message)s"


@functools.lru_cache(maxsize=None)
def _cached_log_stream(filename):
    return PathManager.open(filename, "a")


def setup_logging(output_dir=None, level=logging.INFO):
    """
    Sets up the logging. Messages go to standard error so that standard
    output and the report file stay clean for the caller.
    Args:
        output_dir (string): if given, a `run.log` file is also written in
            this directory.
        level (int): level of the standard error handler.
    """
    logger = logging.getLogger()
    logger.handlers = []
    logger.setLevel(logging.DEBUG)
    plain_formatter = logging.Formatter(_FORMAT, datefmt="%m/%d %H:%M:%S")

    ch = logging.StreamHandler(stream=sys.stderr)
    ch.setLevel(level)
    ch.setFormatter(plain_formatter)
    logger.addHandler(ch)

    if output_dir is not None:
        if not PathManager.exists(output_dir):
            PathManager.mkdirs(output_dir)
        filename = os.path.join(output_dir, "run.log")
        fh = logging.StreamHandler(_cached_log_stream(filename))
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(plain_formatter)
        logger.addHandler(fh)


def get_logger(name):
    """
    Module logger, e.g. `logger = logging.get_logger(__name__)`. Handlers
    live on the root logger installed by `setup_logging`.
    """
    return logging.getLogger(name)


def _rounded(value):
    if isinstance(value, float):
        return decimal.Decimal("{:.6e}".format(value))
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


def log_json_stats(stats, tag="json_stats"):
    """
    Logs a dict as one json line, floats rounded to 7 significant digits.
    Args:
        stats (dict): values to log, nested dicts and lists included.
        tag (str): prefix of the line, for grepping run.log.
    """
    json_stats = simplejson.dumps(
        _rounded(stats), sort_keys=True, use_decimal=True
    )
    get_logger(__name__).info("{:s}: {:s}".format(tag, json_stats))
