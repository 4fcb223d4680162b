#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings

from conftest import block_dims, seeds
from jordannorm.algebra import (
    AlgElement,
    FdAlgebra,
    State,
    adjoint,
    adjoint_index,
    apply_state,
    basis_element,
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
    right_gram,
    structure_constants,
    vector_state,
)
from jordannorm.algebra.linalg import (
    eigh_truncated,
    gram_schmidt_completion,
    pinv,
    polar_unitary,
    range_basis,
    spectral_norm,
)
from jordannorm.utils.errors import ShapeError


def test_dimension_and_block_slices():
    alg = FdAlgebra([2, 3])
    assert alg.dim == 13
    assert alg.num_blocks == 2
    assert alg.block_slice(1) == slice(4, 13)
    assert not alg.is_commutative()
    assert FdAlgebra([1, 1, 1]).is_commutative()


@pytest.mark.parametrize("dims", [[], [0], [2, -1]])
def test_invalid_blocks(dims):
    with pytest.raises(ShapeError):
        FdAlgebra(dims)


def test_basis_order_is_row_major():
    alg = FdAlgebra([2, 1])
    assert basis_labels(alg) == (
        (0, 0, 0),
        (0, 0, 1),
        (0, 1, 0),
        (0, 1, 1),
        (1, 0, 0),
    )
    npt.assert_array_equal(adjoint_index(alg), [0, 2, 1, 3, 4])


def test_structure_constants_m2():
    table = structure_constants(FdAlgebra([2]))
    # e_12 e_21 = e_11, e_12 e_12 = 0.
    assert table[1, 2] == 0
    assert table[1, 1] == -1
    assert table[2, 1] == 3


def test_structure_constants_match_products(alg):
    table = structure_constants(alg)
    for p in range(alg.dim):
        for q in range(alg.dim):
            product = mul(basis_element(alg, p), basis_element(alg, q)).vec()
            expected = np.zeros(alg.dim)
            if table[p, q] >= 0:
                expected[table[p, q]] = 1.0
            npt.assert_array_equal(product, expected)


def test_element_shape_errors(m2):
    with pytest.raises(ShapeError):
        AlgElement(m2, [np.eye(3)])
    with pytest.raises(ShapeError):
        AlgElement(m2, [np.eye(2), np.eye(2)])
    with pytest.raises(ShapeError):
        mul(identity(m2), identity(FdAlgebra([3])))


def test_op_norm_is_largest_block_norm():
    alg = FdAlgebra([1, 2])
    x = AlgElement(alg, [[[3.0]], [[1.0, 0.0], [0.0, -2.0]]])
    assert op_norm(x) == pytest.approx(3.0)
    assert op_norm(identity(alg)) == pytest.approx(1.0)


def test_state_validation(m2):
    with pytest.raises(ValueError):
        State(m2, [np.diag([1.5, -0.5])])
    with pytest.raises(ValueError):
        State(m2, [np.eye(2)])
    with pytest.raises(ShapeError):
        State(m2, [np.eye(2) / 2, np.eye(2) / 2])
    # Round-off below the tolerance is clipped.
    phi = State(m2, [np.diag([1.0, -1e-12])])
    assert np.linalg.eigvalsh(phi.densities[0]).min() >= 0.0


def test_maximally_mixed_is_normalized_trace():
    alg = FdAlgebra([1, 2])
    tau = maximally_mixed(alg)
    assert apply_state(tau, identity(alg)) == pytest.approx(1.0)
    x = AlgElement(alg, [[[3.0]], [[1.0, 5.0], [7.0, 2.0]]])
    assert apply_state(tau, x) == pytest.approx((3.0 + 1.0 + 2.0) / 3.0)


def test_vector_state(m3):
    phi = vector_state(m3, 0, 1)
    x = AlgElement(m3, [np.arange(9.0).reshape(3, 3)])
    assert apply_state(phi, x) == pytest.approx(4.0)


@settings(max_examples=25, deadline=None)
@given(dims=block_dims, seed=seeds)
def test_state_quadratic_forms(dims, seed):
    alg = FdAlgebra(dims)
    rng = np.random.default_rng(seed)
    phi = random_state(alg, rng)
    a = random_element(alg, rng)
    v = a.vec()
    left = np.vdot(v, left_gram(phi) @ v)
    right = np.vdot(v, right_gram(phi) @ v)
    npt.assert_allclose(
        left, apply_state(phi, mul(adjoint(a), a)), atol=1e-10
    )
    npt.assert_allclose(
        right, apply_state(phi, mul(a, adjoint(a))), atol=1e-10
    )
    # The sesquilinear version pairs y^* x.
    y = random_element(alg, rng)
    npt.assert_allclose(
        np.vdot(y.vec(), left_gram(phi) @ v),
        apply_state(phi, mul(adjoint(y), a)),
        atol=1e-10,
    )


@settings(max_examples=25, deadline=None)
@given(dims=block_dims, seed=seeds)
def test_functional_norm_is_attained(dims, seed):
    alg = FdAlgebra(dims)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
    blocks = functional_from_vector(alg, coeffs)
    norm, u = functional_norm(blocks, alg)
    expected = sum(np.linalg.svd(c, compute_uv=False).sum() for c in blocks)
    assert norm == pytest.approx(expected, rel=1e-10)
    npt.assert_allclose(coeffs @ u.vec(), norm, atol=1e-9)
    assert op_norm(u) == pytest.approx(1.0, abs=1e-10)


def test_random_state_rank(m3, rng):
    phi = random_state(m3, rng, rank=1)
    assert np.linalg.matrix_rank(phi.densities[0], tol=1e-10) == 1
    assert np.trace(phi.densities[0]).real == pytest.approx(1.0)


def test_linalg_helpers(rng):
    assert spectral_norm(np.zeros((0, 3))) == 0.0
    assert pinv(np.zeros((2, 0))).shape == (0, 2)
    first = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    first = first / np.linalg.norm(first)
    basis = gram_schmidt_completion(first)
    npt.assert_allclose(basis[:, 0], first)
    npt.assert_allclose(basis.conj().T @ basis, np.eye(4), atol=1e-12)

    low_rank = np.outer([1.0, 2.0, 0.0], [1.0, 1.0])
    assert range_basis(low_rank).shape == (3, 1)
    w, v, min_eig = eigh_truncated(np.diag([2.0, 1e-14, -1e-15]), 1e-12)
    npt.assert_allclose(w, [2.0])
    assert v.shape == (3, 1)
    assert min_eig < 0

    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    u = polar_unitary(m)
    npt.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)
