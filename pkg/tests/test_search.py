#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

import numpy as np
import numpy.testing as npt
import pytest

from jordannorm.algebra import FdAlgebra, maximally_mixed, random_state
from jordannorm.forms import (
    BilinearForm,
    HilbertMap,
    column_map,
    corner_form,
    random_low_rank_form,
    row_extraction,
)
from jordannorm.grothendieck import (
    find_witness_bilinear,
    find_witness_little,
    mw_update,
    witness_ratio,
)


def test_mw_update_keeps_a_state(rng):
    alg = FdAlgebra([1, 2])
    phi = random_state(alg, rng)
    directions = [np.array([[2.0]]), np.array([[1.0, 1j], [-1j, 0.5]])]
    out = mw_update(phi, directions, 0.3)
    total = sum(np.trace(r).real for r in out.densities)
    assert total == pytest.approx(1.0)
    for r in out.densities:
        npt.assert_allclose(r, r.conj().T, atol=1e-14)
        assert np.linalg.eigvalsh(r).min() > 0.0


def test_mw_update_zero_direction_is_identity(m2):
    tau = maximally_mixed(m2)
    out = mw_update(tau, [np.zeros((2, 2))], 0.5)
    npt.assert_allclose(out.densities[0], tau.densities[0], atol=1e-12)


def test_mw_update_moves_towards_direction(m2):
    tau = maximally_mixed(m2)
    out = mw_update(tau, [np.diag([1.0, 0.0])], 0.1)
    assert out.densities[0][0, 0].real > 0.5


def test_mw_update_respects_floor(m2):
    tau = maximally_mixed(m2)
    out = mw_update(tau, [np.diag([100.0, 0.0])], 1.0, eig_floor=1e-6)
    assert np.linalg.eigvalsh(out.densities[0]).min() >= 0.9e-6


@pytest.mark.parametrize("d", [2, 3])
def test_little_search_on_row_extraction(d):
    fmap = row_extraction(d)
    states, report = find_witness_little(fmap, norm_F=1.0, restarts=2)
    assert states.kind == "little"
    assert report.passed
    assert witness_ratio(fmap, states) <= 1.0 + 1e-9


def test_little_search_on_column_map():
    fmap = column_map(3)
    states, report = find_witness_little(fmap, restarts=2)
    assert report.passed
    assert report.norm_estimate_used == pytest.approx(1.0, abs=1e-8)


def test_bilinear_search_on_corner_form_m2():
    # The normalized trace on every slot already has ratio d / 2 = 1.
    form = corner_form(2)
    states, report = find_witness_bilinear(form, norm_B=1.0, restarts=2)
    assert states.kind == "bilinear"
    assert report.passed
    assert witness_ratio(form, states) <= 1.0 + 1e-9


@pytest.mark.slow
def test_bilinear_search_on_corner_form():
    form = corner_form(3)
    states, report = find_witness_bilinear(form, norm_B=1.0, restarts=2)
    assert report.passed
    assert witness_ratio(form, states) <= 1.0 + 1e-9


@pytest.mark.slow
def test_bilinear_search_on_commutative_form():
    rng = np.random.default_rng(3)
    alg = FdAlgebra([1, 1, 1])
    form = random_low_rank_form(alg, alg, 2, rng)
    states, report = find_witness_bilinear(form, seed=1, restarts=8)
    assert report.passed
    assert witness_ratio(form, states) <= (
        report.norm_estimate_used * (1 + 1e-9)
    )


def test_zero_instances_succeed_at_once(m2):
    form = BilinearForm(m2, m2, np.zeros((4, 4)))
    _, report = find_witness_bilinear(form, restarts=1)
    assert report.passed
    fmap = HilbertMap(m2, 2, np.zeros((2, 4)))
    _, report = find_witness_little(fmap, restarts=1)
    assert report.passed
