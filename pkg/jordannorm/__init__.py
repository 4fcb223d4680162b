#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from jordannorm.utils.env import setup_environment

setup_environment()
