#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Passing between Jordan-Stinespring representations of a positive form B and
of its Hilbert space map F_B.

From F_B(a) = T sigma(a) T_xi to B:

    B(a, b) = T_xi^* sigma(a) T^* T sigma(b) T_xi.

From B to F_B: symmetrize a representation of B with unit end vectors into
one with a self-adjoint middle operator S and equal end vectors gamma,
compress S to the span of sigma(A) gamma, where it is positive, and read off
F_B(a) = W^* (QSQ)^(1/2) sigma(a) gamma for an isometry W.
"""

import numpy as np

import jordannorm.utils.logging as logging
from jordannorm.algebra import maximally_mixed
from jordannorm.algebra.linalg import (
    max_abs,
    polar_unitary,
    psd_sqrt,
    range_basis,
    spectral_norm,
)
from jordannorm.forms import BilinearForm
from jordannorm.gns import gns_construct
from jordannorm.jsrep import (
    JordanRep,
    JSRep,
    basis_images,
    bound,
    is_zero_map,
    zero_representation,
)
from jordannorm.positive.gram import build_fb, is_positive
from jordannorm.utils.errors import (
    FrameMismatchError,
    PositivityError,
    ShapeError,
)

logger = logging.get_logger(__name__)


def _check_bilinear_scalar(rep, what):
    if rep.arity != 2 or rep.target_dim != 1 or rep.source_dim != 1:
        raise ShapeError(
            "{} needs a scalar bilinear representation, got {}".format(
                what, rep
            )
        )
    if rep.algebras[0] != rep.algebras[1]:
        raise ShapeError("{} needs a form on A x A".format(what))


def represented_form(rep):
    """The bilinear form on the basis of a scalar bilinear representation."""
    alg_a, alg_b = rep.algebras
    return BilinearForm(alg_a, alg_b, basis_images(rep)[:, :, 0, 0])


def square_fb_rep(jf):
    """
    Bilinear representation (T_xi^*, sigma, T^* T, sigma, T_xi) of
    B(a, b) = <F(b), F(a^*)> from a representation (T, sigma, T_xi) of F.
    Its bound is at most bound(jf)^2.
    """
    if jf.arity != 1 or jf.source_dim != 1:
        raise ShapeError(
            "square_fb_rep needs a map into a Hilbert space, got {}".format(jf)
        )
    sigma = jf.reps[0]
    if is_zero_map(jf):
        return zero_representation([sigma.alg, sigma.alg], 1, 1)
    t, t_xi = jf.operators
    return JSRep([sigma, sigma], [t_xi.conj().T, t.conj().T @ t, t_xi])


def symmetrize(rep, psd_tol=1e-9, tol=1e-9):
    """
    Self-adjoint representation (gamma^*, sigma_l + sigma_r, S, ..., gamma)
    of a positive form, with

        S = [[0, T], [T^*, 0]],  gamma = (eta, xi) / sqrt(2),

    after rescaling the end vectors eta, xi of `rep` to unit length. ||S||
    equals the rescaled ||T||, so the bound does not change.
    Args:
        rep (JSRep): scalar bilinear representation on A x A.
        psd_tol (float): positivity tolerance of the represented form.
        tol (float): allowed evaluation residual on basis pairs.
    Returns:
        sym (JSRep): the symmetrized representation.
    """
    _check_bilinear_scalar(rep, "symmetrize")
    form = represented_form(rep)
    positive, min_eig = is_positive(form, psd_tol)
    if not positive:
        raise PositivityError(
            "Only positive forms can be symmetrized, min Gram eigenvalue "
            "{:.3e}".format(min_eig)
        )
    alg = rep.algebras[0]
    if form.is_zero():
        return zero_representation([alg, alg], 1, 1)
    eta = rep.operators[0].conj().T[:, 0]
    t = rep.operators[1]
    xi = rep.operators[2][:, 0]
    t = np.linalg.norm(eta) * np.linalg.norm(xi) * t
    eta = eta / np.linalg.norm(eta)
    xi = xi / np.linalg.norm(xi)

    sigma, perm = rep.reps[0].direct_sum(rep.reps[1])
    k_l, k_r = t.shape
    s = np.block(
        [
            [np.zeros((k_l, k_l)), t],
            [t.conj().T, np.zeros((k_r, k_r))],
        ]
    )[perm][:, perm]
    gamma = (np.concatenate([eta, xi]) / np.sqrt(2.0))[perm]
    sym = JSRep(
        [sigma, sigma], [gamma.conj()[np.newaxis, :], s, gamma[:, np.newaxis]]
    )
    residual = max_abs(basis_images(sym)[:, :, 0, 0] - form.coeffs)
    if residual > tol * max(1.0, max_abs(form.coeffs)):
        raise PositivityError(
            "Symmetrized representation misses the form by {:.3e}".format(
                residual
            )
        )
    return sym


def compress_positive(
    sym,
    form=None,
    rcond=1e-10,
    psd_tol=1e-8,
    frame_tol=1e-8,
    rank_tol=1e-12,
):
    """
    Representation of F_B from a symmetrized representation of B.
    Args:
        sym (JSRep): output of `symmetrize`.
        form (BilinearForm, optional): B, read off `sym` when omitted.
        rcond (float): cutoff of the range basis of sigma(A) gamma.
        psd_tol (float): negative eigenvalues of QSQ allowed, relative.
        frame_tol (float): allowed mismatch W^* G - F_B on the basis.
        rank_tol (float): rank cutoff of F_B.
    Returns:
        rep (JSRep): (W^* (QSQ)^(1/2), sigma, gamma).
        isometry (ndarray): W, with W^* W = I.
    """
    _check_bilinear_scalar(sym, "compress_positive")
    form = represented_form(sym) if form is None else form
    data = build_fb(form, rank_tol=rank_tol)
    sigma = sym.reps[0]
    if max_abs(sigma.images - sym.reps[1].images) > 0.0:
        raise ShapeError(
            "compress_positive needs the same sigma in both slots"
        )
    if data.fb.target_dim == 0:
        return (
            zero_representation([sigma.alg], 0, 1),
            np.zeros((sigma.space_dim, 0), dtype=np.complex128),
        )
    s = sym.operators[1]
    gamma = sym.operators[2][:, 0]

    orbit = np.einsum("pij,j->ip", sigma.images, gamma)
    q = range_basis(orbit, rcond)
    compressed = q.conj().T @ s @ q
    scale = max(1.0, spectral_norm(compressed))
    skew = max_abs(compressed - compressed.conj().T)
    min_eig = float(
        np.linalg.eigvalsh(0.5 * (compressed + compressed.conj().T)).min()
    )
    if skew > psd_tol * scale or min_eig < -psd_tol * scale:
        raise PositivityError(
            "Compressed middle operator is not positive (min eigenvalue "
            "{:.3e}, skew {:.3e})".format(min_eig, skew)
        )
    root = psd_sqrt(compressed)
    frame = root @ (q.conj().T @ orbit)
    target = data.fb.matrix
    k = target.shape[0]
    # Change of frame restricted to the top k singular directions.
    u, sv, vh = np.linalg.svd(frame, full_matrices=False)
    if sv.size < k or sv[k - 1] <= rcond * sv[0]:
        raise FrameMismatchError(
            "Compressed frame has rank below {}, the rank of F_B".format(k)
        )
    change = (target @ vh[:k].conj().T / sv[:k]) @ u[:, :k].conj().T
    w_compressed = polar_unitary(change).conj().T
    mismatch = max_abs(w_compressed.conj().T @ frame - target)
    if mismatch > frame_tol * max(1.0, max_abs(target)):
        raise FrameMismatchError(
            "No isometry matches the compressed frame to F_B (mismatch "
            "{:.3e}); tighten the range cutoff".format(mismatch)
        )
    isometry = q @ w_compressed
    head = w_compressed.conj().T @ root @ q.conj().T
    rep = JSRep([sigma], [head, gamma[:, np.newaxis]])
    logger.debug(
        "Compressed to rank {} of {}, bound {:.9f}".format(
            q.shape[1], sigma.space_dim, bound(rep)
        )
    )
    return rep, isometry


def roundtrip(rep, form=None, psd_tol=1e-9, rcond=1e-10, frame_tol=1e-8,
              rank_tol=1e-12):
    """
    symmetrize, compress_positive and square_fb_rep in sequence.
    Returns:
        reps (dict): `symmetrized`, `fb` and `squared` representations and
            the isometry `W`.
        bounds (dict): the bound of every representation along the way.
    """
    form = represented_form(rep) if form is None else form
    sym = symmetrize(rep, psd_tol=psd_tol)
    fb_rep, isometry = compress_positive(
        sym, form, rcond=rcond, frame_tol=frame_tol, rank_tol=rank_tol
    )
    squared = square_fb_rep(fb_rep)
    bounds = {
        "start": bound(rep),
        "symmetrized": bound(sym),
        "fb": bound(fb_rep),
        "squared": bound(squared),
    }
    reps = {
        "symmetrized": sym,
        "fb": fb_rep,
        "squared": squared,
        "W": isometry,
    }
    return reps, bounds


def trace_form_rep(alg):
    """
    Natural representation (xi^*, pi, I, pi, xi) of the trace form
    B(x, y) = sum_i Tr(x_i y_i) / sum_i d_i through the GNS construction of
    the normalized trace; its bound is one.
    """
    data = gns_construct(alg, maximally_mixed(alg))
    sigma = JordanRep(rep_part=data.pi)
    xi = data.cyclic_vector
    return JSRep(
        [sigma, sigma],
        [xi.conj()[np.newaxis, :], np.eye(data.space_dim), xi[:, np.newaxis]],
    )
