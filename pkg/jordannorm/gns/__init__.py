#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from .construction import GnsData, gns_construct, verify_gns  # noqa
