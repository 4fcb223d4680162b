#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from .compress import (  # noqa
    compress_positive,
    represented_form,
    roundtrip,
    square_fb_rep,
    symmetrize,
    trace_form_rep,
)
from .gram import (  # noqa
    PositiveFormData,
    build_fb,
    check_norm_square,
    fb_inner_product_residual,
    is_positive,
    positivity_gram,
)
