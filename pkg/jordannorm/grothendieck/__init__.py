#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from .factorize import (  # noqa
    SPLIT_PIECES,
    factorize_bilinear,
    factorize_little,
    joint_cb_residual,
    reproduction_residual,
    split_four,
    transpose_factorization_example,
)
from .ratio import (  # noqa
    INSTANCE_REGISTRY,
    Instance,
    RatioReport,
    export_csv,
    ratio_scan,
    reports_to_frame,
    solve_instance,
)
from .search import (  # noqa
    find_witness_bilinear,
    find_witness_little,
    mw_update,
)
from .witness import (  # noqa
    WitnessReport,
    WitnessStates,
    bilinear_quadratic_forms,
    bilinear_ratio,
    check_witness,
    check_witness_little,
    little_quadratic_form,
    little_ratio,
    recompute_violation,
    unit_element_from_vec,
    witness_ratio,
)
