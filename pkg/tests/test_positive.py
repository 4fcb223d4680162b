#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import block_dims, seeds
from jordannorm.algebra import (
    FdAlgebra,
    adjoint,
    adjoint_index,
    maximally_mixed,
    random_element,
    random_state,
)
from jordannorm.forms import (
    BilinearForm,
    corner_form,
    product_form,
    trace_form,
)
from jordannorm.gns import gns_construct
from jordannorm.grothendieck import transpose_factorization_example
from jordannorm.jsrep import JordanRep, JSRep, basis_images, bound
from jordannorm.positive import (
    build_fb,
    check_norm_square,
    compress_positive,
    fb_inner_product_residual,
    is_positive,
    positivity_gram,
    represented_form,
    roundtrip,
    symmetrize,
    trace_form_rep,
)
from jordannorm.utils.errors import PositivityError, ShapeError


def test_trace_and_product_forms_are_positive(alg, rng):
    assert is_positive(trace_form(alg))[0]
    phi = random_state(alg, rng)
    assert is_positive(product_form(phi, phi))[0]


def test_negative_trace_form_is_not_positive(m2):
    positive, min_eig = is_positive(trace_form(m2, scale=-1.0))
    assert not positive
    assert min_eig == pytest.approx(-1.0)
    with pytest.raises(PositivityError):
        build_fb(trace_form(m2, scale=-1.0))


def test_positivity_needs_a_square_form():
    with pytest.raises(ShapeError):
        positivity_gram(
            BilinearForm(FdAlgebra([2]), FdAlgebra([3]), np.zeros((4, 9)))
        )


def test_gram_matches_values(m2, rng):
    form = trace_form(m2)
    gram = positivity_gram(form)
    a = random_element(m2, rng)
    v = a.vec()
    # [a, a]_B = B(a^*, a).
    npt.assert_allclose(
        np.vdot(v, gram.T @ v), form(adjoint(a), a), atol=1e-12
    )


@settings(max_examples=30, deadline=None)
@given(dims=block_dims, seed=seeds, positive=st.booleans())
def test_is_positive_agrees_with_sampled_values(dims, seed, positive):
    alg = FdAlgebra(dims)
    rng = np.random.default_rng(seed)
    n = alg.dim
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q = np.linalg.qr(z)[0]
    eigs = rng.uniform(0.0, 1.0, n)
    if not positive:
        eigs = 0.1 * eigs
        eigs[0] = -1.0
    gram = (q * eigs) @ q.conj().T
    # positivity_gram reads coeffs[adj, :].T and adj is an involution.
    form = BilinearForm(alg, alg, gram.T[adjoint_index(alg), :])
    npt.assert_allclose(positivity_gram(form), gram, atol=1e-12)

    is_pos, min_eig = is_positive(form)
    values = []
    for _ in range(200):
        a = random_element(alg, rng)
        v = a.vec()
        norm2 = np.vdot(v, v).real
        value = form(adjoint(a), a)
        assert abs(value.imag) <= 1e-9 * norm2
        values.append(value.real / norm2)
    assert is_pos == positive
    assert is_pos == (min(values) >= -1e-9)
    assert min(values) >= min_eig - 1e-9


@pytest.mark.parametrize("dims", [[1], [2], [3], [4]])
def test_norm_square_of_trace_forms(dims):
    form = trace_form(FdAlgebra(dims))
    report = check_norm_square(form, build_fb(form), restarts=4)
    assert report["relative_gap"] <= 1e-5
    assert report["passed"]


@pytest.mark.parametrize("dims", [[2], [1, 2], [3]])
def test_fb_of_trace_form(dims):
    alg = FdAlgebra(dims)
    data = build_fb(trace_form(alg))
    assert data.kernel_dim == 0
    assert data.fb.target_dim == alg.dim
    assert fb_inner_product_residual(data) <= 1e-10


def test_fb_of_product_form_has_rank_one(m3, rng):
    phi = random_state(m3, rng)
    data = build_fb(product_form(phi, phi))
    assert data.fb.target_dim == 1
    assert data.kernel_dim == m3.dim - 1
    assert fb_inner_product_residual(data) <= 1e-10


def test_norm_square(m2):
    form = trace_form(m2)
    report = check_norm_square(form, build_fb(form), restarts=4)
    assert report["passed"]
    assert report["norm_B"] == pytest.approx(1.0, abs=1e-8)
    assert report["norm_FB_squared"] == pytest.approx(1.0, abs=1e-8)


def test_symmetrize_keeps_form_and_bound(m2):
    rep = trace_form_rep(m2)
    assert bound(rep) == pytest.approx(1.0)
    sym = symmetrize(rep)
    s = sym.operators[1]
    npt.assert_allclose(s, s.conj().T, atol=1e-12)
    npt.assert_allclose(
        sym.operators[0], sym.operators[2].conj().T, atol=1e-12
    )
    assert bound(sym) == pytest.approx(bound(rep))
    npt.assert_allclose(basis_images(sym), basis_images(rep), atol=1e-10)


def test_symmetrize_rejects_non_positive(m2):
    rep = trace_form_rep(m2)
    negative = JSRep(
        rep.reps, [rep.operators[0], -rep.operators[1], rep.operators[2]]
    )
    with pytest.raises(PositivityError):
        symmetrize(negative)


@pytest.mark.parametrize("dims", [[2], [1, 2], [3], [4]])
def test_roundtrip_of_trace_form(dims):
    alg = FdAlgebra(dims)
    rep = trace_form_rep(alg)
    reps, bounds = roundtrip(rep)
    form = trace_form(alg)
    assert bounds["fb"] ** 2 <= bounds["start"] * (1.0 + 1e-9)
    assert bounds["squared"] <= bounds["start"] * (1.0 + 1e-9)
    npt.assert_allclose(
        represented_form(reps["squared"]).coeffs, form.coeffs, atol=1e-9
    )
    w = reps["W"]
    npt.assert_allclose(w.conj().T @ w, np.eye(w.shape[1]), atol=1e-9)


def _product_rep(phi):
    g = gns_construct(phi.algebra, phi)
    sigma = JordanRep(rep_part=g.pi)
    xi = g.cyclic_vector
    return JSRep(
        [sigma, sigma],
        [xi.conj()[np.newaxis, :], np.outer(xi, xi.conj()), xi[:, np.newaxis]],
    )


def test_roundtrip_of_product_form(m2, rng):
    phi = random_state(m2, rng)
    form = product_form(phi, phi)
    data = build_fb(form)
    # F_B is rank one and the compressed frame is matched to it exactly.
    from_fb = compress_positive(symmetrize(_product_rep(phi)), form)[0]
    npt.assert_allclose(
        basis_images(from_fb)[:, :, 0], data.fb.matrix.T, atol=1e-9
    )


def test_trace_form_rep_values(m2):
    rep = trace_form_rep(m2)
    npt.assert_allclose(
        represented_form(rep).coeffs, trace_form(m2).coeffs, atol=1e-12
    )
    assert maximally_mixed(m2).algebra == rep.algebras[0]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_corner_form_is_positive_with_row_fb(d):
    # B(a^*, a) = (a a^*)_{11}, so F_B is a row extraction.
    data = build_fb(corner_form(d))
    assert data.fb.target_dim == d
    assert data.kernel_dim == d * d - d
    report = check_norm_square(corner_form(d), data, restarts=4)
    assert report["passed"]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_roundtrip_of_transpose_factorization(d):
    rep = transpose_factorization_example(d)
    reps, bounds = roundtrip(rep)
    for name in ["symmetrized", "fb", "squared"]:
        assert bounds[name] == pytest.approx(1.0, abs=1e-9), name
    npt.assert_allclose(
        represented_form(reps["squared"]).coeffs,
        corner_form(d).coeffs,
        atol=1e-9,
    )


def test_fb_of_zero_form(m2):
    data = build_fb(BilinearForm(m2, m2, np.zeros((4, 4))))
    assert data.fb.target_dim == 0
    assert data.kernel_dim == 4
