#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings

from conftest import seeds
from jordannorm.algebra import (
    FdAlgebra,
    adjoint,
    mul,
    random_element,
)
from jordannorm.forms import corner_form
from jordannorm.grothendieck import transpose_factorization_example
from jordannorm.jsrep import (
    JordanRep,
    JSRep,
    StarRepTable,
    add,
    basis_images,
    bound,
    direct_sum,
    evaluate,
    identity_table,
    is_zero_map,
    multiplicativity_residual,
    normalize,
    operator_norms,
    self_adjoint_residual,
    transpose_table,
    validate,
    validate_jordan_rep,
    zero_representation,
)
from jordannorm.utils.errors import ShapeError, ZeroOperatorError

# Algebras with at most four dimensional matrix blocks.
SUM_DIMS = [[1], [2], [1, 1], [1, 2], [3], [4]]


def jordan_identity_transpose(alg):
    return JordanRep(identity_table(alg), transpose_table(alg))


def random_bilinear_rep(alg, rng):
    """Scalar bilinear representation through pi + pi^T with random T_i."""
    sigma = jordan_identity_transpose(alg)
    k = sigma.space_dim

    def gaussian(shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    return JSRep(
        [sigma, sigma],
        [gaussian((1, k)), gaussian((k, k)), gaussian((k, 1))],
    )


def test_identity_and_transpose_tables(alg):
    rep = identity_table(alg)
    anti = transpose_table(alg)
    assert multiplicativity_residual(rep) == 0.0
    assert multiplicativity_residual(anti, reverse=True) == 0.0
    assert self_adjoint_residual(rep) == 0.0
    assert self_adjoint_residual(anti) == 0.0
    if any(d > 1 for d in alg.block_dims):
        assert multiplicativity_residual(anti) > 0.5


def test_jordan_rep_images_are_block_diagonal(m2, rng):
    sigma = jordan_identity_transpose(m2)
    a = random_element(m2, rng)
    expected = np.zeros((4, 4), dtype=np.complex128)
    expected[:2, :2] = a.blocks[0]
    expected[2:, 2:] = a.blocks[0].T
    npt.assert_allclose(sigma.image(a), expected, atol=1e-12)


def test_jordan_direct_sum_permutation(m2):
    x = JordanRep(identity_table(m2), transpose_table(m2))
    y = JordanRep(anti_part=transpose_table(m2))
    total, perm = x.direct_sum(y)
    assert (total.rep_dim, total.anti_dim) == (2, 4)
    npt.assert_array_equal(perm, [0, 1, 2, 3, 4, 5])
    total, perm = y.direct_sum(x)
    assert (total.rep_dim, total.anti_dim) == (2, 4)
    # Rep part of x (coordinates 2, 3 of the concatenation) moves first.
    npt.assert_array_equal(perm, [2, 3, 0, 1, 4, 5])
    concat = np.zeros((6, 6), dtype=np.complex128)
    concat[:2, :2] = y.images[1]
    concat[2:, 2:] = x.images[1]
    npt.assert_allclose(total.images[1], concat[perm][:, perm])


def test_validate_accepts_constructed_tables(alg):
    sigma = jordan_identity_transpose(alg)
    residuals = validate_jordan_rep(sigma)
    assert max(residuals.values()) < 1e-12


def test_validate_rejects_perturbed_image(m2):
    images = np.array(identity_table(m2).images)
    images[0, 0, 0] += 1e-3
    sigma = JordanRep(rep_part=StarRepTable(m2, 2, images))
    rep = JSRep([sigma], [np.eye(2), np.ones((2, 1))])
    report = validate(rep, tol=1e-8)
    assert not report.passed
    assert report.max_residual >= 1e-3


def test_validation_report_layout():
    report = validate(transpose_factorization_example(3))
    assert report.passed
    out = report.as_dict()
    assert len(out["residuals"]) == 2
    assert set(out["residuals"][0]) == {
        "multiplicativity",
        "anti_multiplicativity",
        "self_adjointness",
        "positivity",
        "shape_chain",
    }


@pytest.mark.parametrize("d", [1, 2, 5])
def test_transpose_factorization_of_corner_form(d, rng):
    rep = transpose_factorization_example(d)
    assert bound(rep) == pytest.approx(1.0)
    form = corner_form(d)
    npt.assert_allclose(
        basis_images(rep)[:, :, 0, 0], form.coeffs, atol=1e-12
    )
    x = random_element(form.alg_a, rng)
    y = random_element(form.alg_b, rng)
    npt.assert_allclose(evaluate(rep, x, y)[0, 0], form(x, y), atol=1e-12)


def test_shape_chain_errors(m2):
    sigma = jordan_identity_transpose(m2)
    with pytest.raises(ShapeError):
        JSRep([sigma], [np.ones((1, 3)), np.ones((4, 1))])
    with pytest.raises(ShapeError):
        JSRep([sigma], [np.ones((1, 4))])
    rep = JSRep([sigma], [np.ones((1, 4)), np.ones((4, 1))])
    x = random_element(m2, np.random.default_rng(0))
    with pytest.raises(ShapeError):
        evaluate(rep, x, x)


def test_normalize_keeps_values_and_bound(m2, rng):
    rep = random_bilinear_rep(m2, rng)
    normal = normalize(rep)
    norms = operator_norms(normal)
    assert norms[1] == pytest.approx(1.0)
    assert norms[0] == pytest.approx(norms[2])
    assert bound(normal) == pytest.approx(bound(rep))
    npt.assert_allclose(basis_images(normal), basis_images(rep), atol=1e-10)


def test_normalize_zero_operator(m2):
    with pytest.raises(ZeroOperatorError):
        normalize(zero_representation([m2, m2], 1, 1))


def test_zero_representation(m2):
    rep = zero_representation([m2, m2], 2, 3)
    assert is_zero_map(rep)
    assert bound(rep) == 0.0
    assert basis_images(rep).shape == (4, 4, 2, 3)


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_direct_sum_is_additive_and_subadditive(seed):
    rng = np.random.default_rng(seed)
    alg = FdAlgebra(SUM_DIMS[int(rng.integers(len(SUM_DIMS)))])
    rep1 = random_bilinear_rep(alg, rng)
    rep2 = random_bilinear_rep(alg, rng)
    total = direct_sum(rep1, rep2)
    images = basis_images(rep1) + basis_images(rep2)
    scale = max(1.0, np.abs(images).max())
    assert np.abs(basis_images(total) - images).max() <= 1e-10 * scale
    slack = bound(total) - bound(rep1) - bound(rep2)
    assert slack <= 1e-10 * max(1.0, bound(rep1) + bound(rep2))
    assert validate(total).passed


def test_add_short_circuits_zero(m2, rng):
    rep = random_bilinear_rep(m2, rng)
    zero_rep = zero_representation([m2, m2], 1, 1)
    assert add(rep, zero_rep) is rep
    assert add(zero_rep, rep) is rep


def test_direct_sum_shape_errors(m2, m3, rng):
    with pytest.raises(ShapeError):
        direct_sum(random_bilinear_rep(m2, rng), random_bilinear_rep(m3, rng))


def test_positivity_of_jordan_images(m3, rng):
    sigma = jordan_identity_transpose(m3)
    a = random_element(m3, rng)
    w = np.linalg.eigvalsh(sigma.image(mul(adjoint(a), a)))
    assert w.min() >= -1e-10
