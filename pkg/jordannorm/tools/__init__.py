#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.
