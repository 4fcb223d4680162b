#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from .fd_algebra import (  # noqa
    AlgElement,
    FdAlgebra,
    State,
    adjoint,
    adjoint_index,
    apply_state,
    basis_element,
    basis_index,
    basis_labels,
    functional_from_vector,
    functional_norm,
    identity,
    left_gram,
    maximally_mixed,
    mul,
    op_norm,
    random_element,
    random_state,
    random_unit_element,
    right_gram,
    structure_constants,
    vector_state,
    zero,
)
