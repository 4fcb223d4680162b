#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Exceptions raised by jordannorm."""


class JordanNormError(Exception):
    """Base class of every error raised on purpose by this package."""


class ShapeError(JordanNormError, ValueError):
    """Algebras, block shapes or operator chains do not fit together."""


class SchemaError(JordanNormError, ValueError):
    """A JSON document does not follow the expected schema."""


class ZeroOperatorError(JordanNormError):
    """A factor of a representation is the zero operator."""


class WitnessFailure(JordanNormError):
    """The interpolation system built from witness states is inconsistent."""


class NormExcessError(JordanNormError):
    """A constructed factor is larger than the declared norm allows."""


class PositivityError(JordanNormError):
    """A form or compressed operator that must be positive is not."""


class FrameMismatchError(JordanNormError):
    """No isometry matches the two frames within tolerance."""
