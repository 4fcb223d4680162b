#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from .amplification import (  # noqa
    CornerExample,
    amplified_eval,
    amplified_op_norm,
    cb_lower_bound,
    corner_example,
    embed_corner,
)
from .bilinear import (  # noqa
    BilinearForm,
    HilbertMap,
    column_map,
    corner_form,
    eval_form,
    product_form,
    random_hilbert_map,
    random_low_rank_form,
    row_extraction,
    trace_form,
)
from .norm import (  # noqa
    NormEstimate,
    check_estimate,
    form_norm,
    hilbertmap_norm,
)
