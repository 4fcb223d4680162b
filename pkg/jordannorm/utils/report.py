#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""JSON reports written by the command line."""

import datetime

import jordannorm.utils.logging as logging

logger = logging.get_logger(__name__)


class Report(object):
    """
    Inputs, tolerances, named checks and results of one command. The report
    passes iff every check passes.
    """

    def __init__(self, command, cfg, inputs=None):
        self.command = command
        self.schema_version = cfg.REPORT.SCHEMA_VERSION
        self.inputs = {} if inputs is None else inputs
        self.tolerances = {}
        self.checks = []
        self.results = {}

    def add_tolerance(self, name, value):
        self.tolerances[name] = float(value)

    def add_check(self, name, value, threshold, passed=None):
        """
        Record a check. By default it passes iff value <= threshold.
        """
        value = None if value is None else float(value)
        if passed is None:
            passed = value is not None and value <= threshold
        self.checks.append(
            {
                "name": name,
                "value": value,
                "threshold": float(threshold),
                "passed": bool(passed),
            }
        )
        if not passed:
            logger.info(
                "Check {} failed: {} against {}".format(name, value, threshold)
            )

    def add_failure(self, name, error):
        """A check that could not be computed because of an error."""
        self.checks.append(
            {
                "name": name,
                "value": None,
                "threshold": None,
                "passed": False,
                "error": "{}: {}".format(type(error).__name__, error),
            }
        )
        logger.info("Check {} failed with {}".format(name, error))

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def as_dict(self):
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "timestamp": datetime.datetime.utcnow().isoformat() + "Z",
            "inputs": self.inputs,
            "tolerances": self.tolerances,
            "checks": self.checks,
            "results": self.results,
            "passed": self.passed,
        }
