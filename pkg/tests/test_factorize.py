#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

import numpy as np
import numpy.testing as npt
import pytest

from conftest import column_witness, corner_witness, row_witness
from jordannorm.algebra import (
    FdAlgebra,
    adjoint_index,
    random_element,
    random_state,
    vector_state,
)
from jordannorm.forms import (
    BilinearForm,
    HilbertMap,
    column_map,
    corner_form,
    form_norm,
    product_form,
    random_low_rank_form,
    row_extraction,
)
from jordannorm.grothendieck import (
    SPLIT_PIECES,
    WitnessStates,
    factorize_bilinear,
    factorize_little,
    find_witness_bilinear,
    joint_cb_residual,
    reproduction_residual,
    split_four,
    transpose_factorization_example,
)
from jordannorm.jsrep import (
    basis_images,
    bound,
    evaluate,
    operator_norms,
    validate,
)
from jordannorm.positive import represented_form, square_fb_rep
from jordannorm.utils.errors import NormExcessError, ShapeError, WitnessFailure


@pytest.mark.parametrize(
    "make, witness",
    [(row_extraction, row_witness), (column_map, column_witness)],
)
@pytest.mark.parametrize("d", [2, 3])
def test_little_factorization(make, witness, d):
    fmap = make(d)
    rep = factorize_little(fmap, witness(d), 1.0)
    assert rep.arity == 1
    assert reproduction_residual(rep, fmap.matrix) <= 1e-8
    assert operator_norms(rep)[0] <= 1.0 + 1e-6
    assert bound(rep) <= np.sqrt(2.0) * (1.0 + 1e-6)
    assert validate(rep).passed


def test_little_factorization_evaluates_the_map(m3, rng):
    fmap = row_extraction(3)
    rep = factorize_little(fmap, row_witness(3), 1.0)
    a = random_element(m3, rng)
    npt.assert_allclose(evaluate(rep, a)[:, 0], fmap(a), atol=1e-9)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_bilinear_factorization_of_corner_form(d, rng):
    form = corner_form(d)
    rep = factorize_bilinear(form, corner_witness(d), 1.0)
    assert rep.arity == 2
    assert reproduction_residual(rep, form.coeffs) <= 1e-8
    assert bound(rep) <= 2.0 * (1.0 + 1e-6)
    report = validate(rep)
    assert report.passed, report.as_dict()
    x = random_element(form.alg_a, rng)
    y = random_element(form.alg_b, rng)
    npt.assert_allclose(evaluate(rep, x, y)[0, 0], form(x, y), atol=1e-9)
    # End vectors have norm sqrt(2) each.
    norms = operator_norms(rep)
    assert norms[0] == pytest.approx(np.sqrt(2.0))
    assert norms[2] == pytest.approx(np.sqrt(2.0))


def test_splitting_records_gns_dimensions():
    rep = factorize_bilinear(corner_form(3), corner_witness(3), 1.0)
    # kappa = nu = delta_1 have rank one, lambda = mu are faithful.
    assert rep.splitting == {"lambda": 9, "kappa": 3, "mu": 9, "nu": 3}
    assert rep.operators[1].shape == (12, 12)


def test_invalid_witness_raises(m2):
    delta = vector_state(m2, 0, 1)
    w = WitnessStates(delta, delta, delta, delta)
    with pytest.raises(WitnessFailure):
        factorize_bilinear(corner_form(2), w, 1.0)


def test_norm_excess_raises():
    with pytest.raises(NormExcessError):
        factorize_bilinear(corner_form(2), corner_witness(2), 0.5)
    with pytest.raises(NormExcessError):
        factorize_little(row_extraction(2), row_witness(2), 0.5)


def test_wrong_witness_kind(m2):
    with pytest.raises(ValueError):
        factorize_little(row_extraction(2), corner_witness(2), 1.0)
    with pytest.raises(ValueError):
        factorize_bilinear(corner_form(2), row_witness(2), 1.0)


def test_zero_instances(m2):
    form = BilinearForm(m2, m2, np.zeros((4, 4)))
    rep = factorize_bilinear(form, corner_witness(2), 0.0)
    assert bound(rep) == 0.0
    fmap = HilbertMap(m2, 2, np.zeros((2, 4)))
    rep = factorize_little(fmap, row_witness(2), 0.0)
    assert bound(rep) == 0.0
    assert basis_images(rep).shape == (4, 2, 1)


def test_split_four_sums_to_the_form():
    form = corner_form(3)
    rep = factorize_bilinear(form, corner_witness(3), 1.0)
    pieces = split_four(rep)
    assert [name for name, _ in pieces] == list(SPLIT_PIECES)
    total = sum(basis_images(piece) for _, piece in pieces)
    npt.assert_allclose(total, basis_images(rep), atol=1e-10)
    for _, piece in pieces:
        assert bound(piece) <= bound(rep) + 1e-10
        assert piece.splitting == rep.splitting


def test_joint_cb_residual_keys():
    rep = factorize_bilinear(corner_form(2), corner_witness(2), 1.0)
    residuals = joint_cb_residual(rep)
    assert set(residuals) == set(SPLIT_PIECES) | {"off_diagonal"}
    for name in SPLIT_PIECES:
        assert 0.0 <= residuals[name] <= 1.0 + 1e-12
    assert residuals["off_diagonal"] == max(
        residuals["lambda_nu"], residuals["kappa_mu"]
    )


def test_split_four_needs_splitting():
    with pytest.raises(ShapeError):
        split_four(transpose_factorization_example(2))
    with pytest.raises(ShapeError):
        joint_cb_residual(transpose_factorization_example(2))


def test_square_of_little_factorization():
    fmap = column_map(3)
    jf = factorize_little(fmap, column_witness(3), 1.0)
    squared = square_fb_rep(jf)
    m = fmap.matrix
    # B(a, b) = <F(b), F(a^*)>.
    expected = m[:, adjoint_index(fmap.alg)].conj().T @ m
    npt.assert_allclose(represented_form(squared).coeffs, expected, atol=1e-9)
    assert bound(squared) <= bound(jf) ** 2 * (1.0 + 1e-9)


def test_square_fb_rep_needs_a_map():
    with pytest.raises(ShapeError):
        square_fb_rep(transpose_factorization_example(2))


@pytest.mark.parametrize("dims_a, dims_b", [([2], [3]), ([1, 2], [2])])
def test_bilinear_factorization_of_product_form(dims_a, dims_b, rng):
    # ||phi x psi|| = 1 for states, and |phi(a)|^2 <= phi(a^* a), phi(a a^*)
    # makes (phi, phi, psi, psi) a witness.
    phi = random_state(FdAlgebra(dims_a), rng, rank=1)
    psi = random_state(FdAlgebra(dims_b), rng, rank=1)
    form = product_form(phi, psi)
    w = WitnessStates(kappa=phi, lam=phi, mu=psi, nu=psi)
    rep = factorize_bilinear(form, w, 1.0)
    assert reproduction_residual(rep, form.coeffs) <= 1e-8
    assert bound(rep) <= 2.0 * (1.0 + 1e-6)
    assert validate(rep).passed
    x = random_element(form.alg_a, rng)
    y = random_element(form.alg_b, rng)
    npt.assert_allclose(evaluate(rep, x, y)[0, 0], form(x, y), atol=1e-9)


@pytest.mark.slow
def test_random_low_rank_forms_factorize():
    # 20 forms of rank <= 2 on M_2 and M_3; at least 80% must converge.
    rng = np.random.default_rng(0)
    converged = 0
    for i in range(20):
        alg = FdAlgebra([2 + i % 2])
        form = random_low_rank_form(alg, alg, 1 + i % 2, rng)
        norm = form_norm(form, restarts=8, seed=i).value
        w, report = find_witness_bilinear(form, seed=i, norm_B=norm)
        if not report.passed:
            continue
        converged += 1
        assert report.max_violation <= 1e-6
        rep = factorize_bilinear(form, w, norm)
        assert reproduction_residual(rep, form.coeffs) <= 1e-8
        assert bound(rep) <= 2.0 * norm * (1.0 + 1e-6)
    assert converged >= 16
