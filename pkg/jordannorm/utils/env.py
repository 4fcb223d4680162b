#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Set up Environment."""

import numpy as np

_ENV_SETUP_DONE = False


def setup_environment():
    """
    Process-wide numeric settings. Floating point errors in numpy are
    reported as warnings instead of passing silently.
    """
    global _ENV_SETUP_DONE
    if _ENV_SETUP_DONE:
        return
    _ENV_SETUP_DONE = True
    np.seterr(divide="warn", over="warn", invalid="warn", under="ignore")
