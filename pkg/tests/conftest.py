#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Shared fixtures."""

import numpy as np
import pytest
from hypothesis import strategies as st

from jordannorm.algebra import FdAlgebra, maximally_mixed, vector_state
from jordannorm.config.defaults import get_cfg
from jordannorm.forms import corner_example, corner_form
from jordannorm.grothendieck import WitnessStates

# Block structures small enough for exhaustive basis checks.
SMALL_DIMS = [[1], [2], [3], [1, 1], [1, 2], [2, 2], [2, 3]]

seeds = st.integers(min_value=0, max_value=2 ** 16)
block_dims = st.sampled_from(SMALL_DIMS)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(params=SMALL_DIMS, ids=lambda d: "x".join(map(str, d)))
def alg(request):
    return FdAlgebra(request.param)


@pytest.fixture
def m2():
    return FdAlgebra([2])


@pytest.fixture
def m3():
    return FdAlgebra([3])


@pytest.fixture
def corner4():
    return corner_example(4)


@pytest.fixture
def cfg():
    """Default config with searches shortened for unit tests."""
    cfg = get_cfg()
    cfg.NORM.RESTARTS = 8
    cfg.WITNESS.RESTARTS = 4
    cfg.WITNESS.ASCENT_STEPS = 30
    cfg.GNS.TRIALS = 20
    return cfg


def corner_witness(d):
    """
    States for B(x, y) = (y x)_{11}: |B(a, b)| <= sqrt((a^* a)_{11})
    sqrt((b b^*)_{11}), so kappa = nu = delta_1 works with any lambda, mu.
    """
    alg = corner_form(d).alg_a
    delta = vector_state(alg, 0, 0)
    tau = maximally_mixed(alg)
    return WitnessStates(kappa=delta, lam=tau, mu=tau, nu=delta)


def row_witness(d):
    """||x_{1.}||^2 = (x x^*)_{11}, so phi = delta_1 for row extraction."""
    alg = FdAlgebra([d])
    return WitnessStates(psi=maximally_mixed(alg), phi=vector_state(alg))


def column_witness(d):
    """||a delta_1||^2 = (a^* a)_{11}, so psi = delta_1 for column maps."""
    alg = FdAlgebra([d])
    return WitnessStates(psi=vector_state(alg), phi=maximally_mixed(alg))
