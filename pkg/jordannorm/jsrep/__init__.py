#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from .representation import (  # noqa
    JSRep,
    ValidationReport,
    add,
    basis_images,
    bound,
    check_shapes,
    direct_sum,
    evaluate,
    is_zero_map,
    normalize,
    operator_norms,
    validate,
    zero_representation,
)
from .star_rep import (  # noqa
    JordanRep,
    StarRepTable,
    identity_table,
    multiplicativity_residual,
    self_adjoint_residual,
    transpose_table,
    validate_jordan_rep,
    zero_table,
)
