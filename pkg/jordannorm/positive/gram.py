#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Positive bilinear forms, B(a^*, a) >= 0 for every a, and the Hilbert space
map F_B with <F_B(x), F_B(y)> = [x, y]_B = B(y^*, x).
"""

import numpy as np

import jordannorm.utils.logging as logging
from jordannorm.algebra import adjoint_index
from jordannorm.algebra.linalg import eigh_truncated, max_abs, spectral_norm
from jordannorm.forms import HilbertMap, form_norm, hilbertmap_norm
from jordannorm.utils.errors import PositivityError, ShapeError

logger = logging.get_logger(__name__)


class PositiveFormData(object):
    """
    A positive form with its Gram matrix and the map F_B.
    """

    def __init__(self, form, gram, fb, kernel_dim):
        """
        Args:
            form (BilinearForm): the positive form B on A x A.
            gram (ndarray): gram[p, q] = B(e_q^*, e_p) = [e_p, e_q]_B.
            fb (HilbertMap): F_B, from the rank factorization of the Gram
                matrix.
            kernel_dim (int): dim(A) minus the rank of the Gram matrix.
        """
        self.form = form
        self.gram = gram
        self.fb = fb
        self.kernel_dim = int(kernel_dim)

    def __repr__(self):
        return "PositiveFormData({}, rank={}, kernel_dim={})".format(
            self.form.alg_a, self.fb.target_dim, self.kernel_dim
        )


def positivity_gram(form):
    """
    Matrix H with H[p, q] = B(e_q^*, e_p). B is positive iff H is Hermitian
    positive semi-definite.
    """
    if not form.is_square():
        raise ShapeError(
            "Positivity needs a form on A x A, got {} x {}".format(
                form.alg_a, form.alg_b
            )
        )
    adj = adjoint_index(form.alg_a)
    return np.array(form.coeffs[adj, :].T)


def is_positive(form, psd_tol=1e-9):
    """
    Args:
        form (BilinearForm): a form on A x A.
        psd_tol (float): eigenvalues down to -psd_tol times max(1, ||H||) are
            accepted, as is a non-Hermitian part of that size.
    Returns:
        positive (bool): whether B(a^*, a) >= 0 for every a.
        min_eig (float): smallest eigenvalue of the Hermitian part of H.
    """
    gram = positivity_gram(form)
    scale = max(1.0, spectral_norm(gram))
    skew = max_abs(gram - gram.conj().T)
    if gram.size == 0:
        return True, 0.0
    min_eig = float(np.linalg.eigvalsh(0.5 * (gram + gram.conj().T)).min())
    positive = skew <= psd_tol * scale and min_eig >= -psd_tol * scale
    return positive, min_eig


def build_fb(form, rank_tol=1e-12, psd_tol=1e-9):
    """
    F_B = D^(1/2) U^* from the eigendecomposition of the Gram matrix of
    [x, y]_B = y^* G x (G = H^T), keeping eigenvalues above rank_tol times
    the largest one.
    Returns:
        data (PositiveFormData): the form, Gram matrix and F_B.
    """
    positive, min_eig = is_positive(form, psd_tol)
    if not positive:
        raise PositivityError(
            "Form is not positive, min Gram eigenvalue {:.3e}".format(min_eig)
        )
    alg = form.alg_a
    gram = positivity_gram(form)
    sesquilinear = gram.T
    w, u, _ = eigh_truncated(sesquilinear, rank_tol)
    matrix = np.sqrt(w)[:, np.newaxis] * u.conj().T
    fb = HilbertMap(alg, w.size, matrix.reshape(w.size, alg.dim))
    residual = max_abs(matrix.conj().T @ matrix - sesquilinear)
    if residual > psd_tol * max(1.0, spectral_norm(gram)):
        raise PositivityError(
            "F_B does not reproduce the Gram matrix (residual {:.3e})".format(
                residual
            )
        )
    logger.debug(
        "F_B of rank {} with kernel dim {}".format(w.size, alg.dim - w.size)
    )
    return PositiveFormData(form, gram, fb, alg.dim - w.size)


def fb_inner_product_residual(data):
    """max |<F_B(e_p), F_B(e_q)> - B(e_q^*, e_p)| over basis pairs."""
    m = data.fb.matrix
    return max_abs((m.conj().T @ m).T - data.gram)


def check_norm_square(form, data, restarts=32, seed=0, tol=1e-5):
    """
    Compare ||B|| with ||F_B||^2, both estimated from below.
    Returns:
        report (dict): the two values, their relative gap and the verdict.
    """
    norm_b = form_norm(form, restarts=restarts, seed=seed).value
    norm_f = hilbertmap_norm(data.fb, restarts=restarts, seed=seed).value
    gap = abs(norm_b - norm_f ** 2)
    relative = gap / norm_b if norm_b > 0 else gap
    return {
        "norm_B": norm_b,
        "norm_FB": norm_f,
        "norm_FB_squared": norm_f ** 2,
        "relative_gap": relative,
        "tol": tol,
        "passed": relative <= tol,
    }
