#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Constructive Jordan-Stinespring factorizations from witness states.

For a map F into a Hilbert space with witness states psi, phi

    F(a) = S (pi_psi(a) + rho_phi(a)) (xi_psi, xi_phi),

and for a bilinear form B with witness states kappa, lambda, mu, nu

    B(a, b) = <T (pi_mu(b) + rho_nu(b)) (xi_mu, xi_nu),
                 (pi_lam(a^*) + rho_kap(a^*)) (xi_lam, xi_kap)>.

S and T are the minimal norm solutions of the interpolation problems on the
basis, so their norms equal the witness ratios.
"""

import numpy as np

import jordannorm.utils.logging as logging
from jordannorm.algebra import FdAlgebra, adjoint_index
from jordannorm.algebra.linalg import max_abs, pinv, spectral_norm
from jordannorm.gns import gns_construct
from jordannorm.jsrep import (
    JordanRep,
    JSRep,
    basis_images,
    transpose_table,
    zero_representation,
)
from jordannorm.utils.errors import NormExcessError, ShapeError, WitnessFailure

logger = logging.get_logger(__name__)

SPLIT_PIECES = ("lambda_mu", "kappa_nu", "lambda_nu", "kappa_mu")


def _orbit(table, xi, indices=None):
    # Columns sigma(e_p) xi, optionally for a reindexed basis.
    images = table.images if indices is None else table.images[indices]
    return np.einsum("pij,j->ip", images, xi)


def _check_reproduction(rep, target, residual_tol, what):
    residual = max_abs(basis_images(rep) - target)
    scale = max(1.0, max_abs(target))
    if residual > residual_tol * scale:
        raise WitnessFailure(
            "Factorization of the {} does not reproduce it on the basis "
            "(residual {:.3e}); the witness states are not valid".format(
                what, residual
            )
        )
    return residual


def _check_norm(value, norm, norm_slack, what):
    if value > norm * (1.0 + norm_slack):
        raise NormExcessError(
            "Interpolating operator of the {} has norm {:.12g} above the norm "
            "estimate {:.12g}; rerun the norm estimate with more "
            "restarts".format(what, value, norm)
        )


def factorize_little(fmap, w, norm_F, rcond=1e-10, residual_tol=1e-8,
                     norm_slack=1e-6):
    """
    Jordan-Stinespring representation of a map into a Hilbert space.
    Args:
        fmap (HilbertMap): the map F.
        w (WitnessStates): psi, phi witness states.
        norm_F (float): norm estimate of F.
        rcond (float): relative rank cutoff of the pseudoinverse.
        residual_tol (float): allowed reproduction residual on the basis.
        norm_slack (float): relative slack on ||S|| <= norm_F.
    Returns:
        rep (JSRep): arity one, operators (S, gamma) with gamma the column
            (xi_psi, xi_phi); its bound is sqrt(2) ||S||.
    """
    if w.kind != "little":
        raise ValueError("factorize_little needs psi, phi witness states")
    alg = fmap.alg
    if fmap.is_zero():
        return zero_representation([alg], fmap.target_dim, 1)
    g_psi = gns_construct(alg, w.psi)
    g_phi = gns_construct(alg, w.phi)
    vectors = np.vstack(
        [
            _orbit(g_psi.pi, g_psi.cyclic_vector),
            _orbit(g_phi.rho, g_phi.cyclic_vector),
        ]
    )
    s = fmap.matrix @ pinv(vectors, rcond)
    gamma = np.concatenate([g_psi.cyclic_vector, g_phi.cyclic_vector])
    sigma = JordanRep(rep_part=g_psi.pi, anti_part=g_phi.rho)
    rep = JSRep([sigma], [s, gamma[:, np.newaxis]])
    # Basis images are target_dim x 1 columns, one per basis element.
    residual = _check_reproduction(
        rep, fmap.matrix.T[:, :, np.newaxis], residual_tol, "map"
    )
    _check_norm(spectral_norm(s), norm_F, norm_slack, "map")
    logger.debug(
        "Little factorization: ||S|| {:.9f}, residual {:.3e}".format(
            spectral_norm(s), residual
        )
    )
    return rep


def factorize_bilinear(form, w, norm_B, rcond=1e-10, residual_tol=1e-8,
                       norm_slack=1e-6):
    """
    Jordan-Stinespring representation of a bilinear form.
    Args:
        form (BilinearForm): the form B.
        w (WitnessStates): kappa, lambda, mu, nu witness states.
        norm_B (float): norm estimate of B.
        rcond, residual_tol, norm_slack: as in `factorize_little`.
    Returns:
        rep (JSRep): arity two with operators (xi_L^*, T, xi_R), where
            xi_L = (xi_lam, xi_kap) and xi_R = (xi_mu, xi_nu) have norm
            sqrt(2) each. The splitting records the four GNS dimensions.
    """
    if w.kind != "bilinear":
        raise ValueError("factorize_bilinear needs bilinear witness states")
    alg_a, alg_b = form.alg_a, form.alg_b
    if form.is_zero():
        rep = zero_representation([alg_a, alg_b], 1, 1)
        return JSRep(
            rep.reps,
            rep.operators,
            {"lambda": 1, "kappa": 0, "mu": 1, "nu": 0},
        )
    g_lam = gns_construct(alg_a, w.lam)
    g_kap = gns_construct(alg_a, w.kappa)
    g_mu = gns_construct(alg_b, w.mu)
    g_nu = gns_construct(alg_b, w.nu)
    adj = adjoint_index(alg_a)
    left = np.vstack(
        [
            _orbit(g_lam.pi, g_lam.cyclic_vector, adj),
            _orbit(g_kap.rho, g_kap.cyclic_vector, adj),
        ]
    )
    right = np.vstack(
        [
            _orbit(g_mu.pi, g_mu.cyclic_vector),
            _orbit(g_nu.rho, g_nu.cyclic_vector),
        ]
    )
    t = pinv(left.conj().T, rcond) @ form.coeffs @ pinv(right, rcond)
    xi_l = np.concatenate([g_lam.cyclic_vector, g_kap.cyclic_vector])
    xi_r = np.concatenate([g_mu.cyclic_vector, g_nu.cyclic_vector])
    sigma_l = JordanRep(rep_part=g_lam.pi, anti_part=g_kap.rho)
    sigma_r = JordanRep(rep_part=g_mu.pi, anti_part=g_nu.rho)
    splitting = {
        "lambda": g_lam.space_dim,
        "kappa": g_kap.space_dim,
        "mu": g_mu.space_dim,
        "nu": g_nu.space_dim,
    }
    rep = JSRep(
        [sigma_l, sigma_r],
        [xi_l.conj()[np.newaxis, :], t, xi_r[:, np.newaxis]],
        splitting,
    )
    target = form.coeffs[:, :, np.newaxis, np.newaxis]
    residual = _check_reproduction(rep, target, residual_tol, "form")
    _check_norm(spectral_norm(t), norm_B, norm_slack, "form")
    logger.debug(
        "Bilinear factorization: ||T|| {:.9f}, residual {:.3e}, "
        "splitting {}".format(spectral_norm(t), residual, splitting)
    )
    return rep


def transpose_factorization_example(d):
    """
    Representation of B(x, y) = (y x)_{11} on M_d through the transpose
    anti representation:

        B(x, y) = delta_1^T x^T y^T delta_1,

    with T_0 = delta_1^T, T_1 = identity and T_2 = delta_1, so the bound is 1.
    """
    assert d >= 1, "Matrix size must be positive, got {}".format(d)
    alg = FdAlgebra([d])
    sigma = JordanRep(anti_part=transpose_table(alg))
    delta = np.zeros(d)
    delta[0] = 1.0
    return JSRep(
        [sigma, sigma],
        [delta[np.newaxis, :], np.eye(d), delta[:, np.newaxis]],
    )


def _split_slices(rep):
    if rep.arity != 2 or rep.splitting is None:
        raise ShapeError(
            "split_four needs a bilinear factorization with recorded GNS "
            "dimensions"
        )
    dims = rep.splitting
    rl, rk = dims["lambda"], dims["kappa"]
    rm, rn = dims["mu"], dims["nu"]
    t = rep.operators[1]
    if t.shape != (rl + rk, rm + rn):
        raise ShapeError(
            "Middle operator of shape {} does not match the splitting "
            "{}".format(t.shape, dims)
        )
    rows = {"lambda": slice(0, rl), "kappa": slice(rl, rl + rk)}
    cols = {"mu": slice(0, rm), "nu": slice(rm, rm + rn)}
    return rows, cols


def split_four(rep):
    """
    Split a bilinear factorization B = B_1 + B_2 + B_3 + B_4 by keeping one
    block of the middle operator, in the order T_lam_mu, T_kap_nu, T_lam_nu,
    T_kap_mu.
    Returns:
        pieces (list): (name, JSRep) pairs.
    """
    rows, cols = _split_slices(rep)
    t = rep.operators[1]
    pieces = []
    for name in SPLIT_PIECES:
        row_name, col_name = name.split("_")
        block = np.zeros_like(t)
        block[rows[row_name], cols[col_name]] = t[
            rows[row_name], cols[col_name]
        ]
        ops = [rep.operators[0], block, rep.operators[2]]
        pieces.append((name, rep.replace_operators(ops)))
    return pieces


def joint_cb_residual(rep):
    """
    Norms of the four blocks of the middle operator relative to its norm. The
    factorization is jointly completely bounded when the lambda_nu and
    kappa_mu blocks vanish.
    Returns:
        residuals (dict): relative block norms and `off_diagonal`, the
            larger of the two mixed ones.
    """
    rows, cols = _split_slices(rep)
    t = rep.operators[1]
    total = spectral_norm(t)
    out = {}
    for name in SPLIT_PIECES:
        row_name, col_name = name.split("_")
        value = spectral_norm(t[rows[row_name], cols[col_name]])
        out[name] = value / total if total > 0 else 0.0
    out["off_diagonal"] = max(out["lambda_nu"], out["kappa_mu"])
    return out


def reproduction_residual(rep, target):
    """
    Largest deviation of the representation from target values on the basis,
    `target[p, q]` for bilinear maps and `target[:, p]` for maps into
    Hilbert spaces.
    """
    images = basis_images(rep)
    if rep.arity == 2:
        return max_abs(images[:, :, 0, 0] - target)
    return max_abs(images[:, :, 0].T - target)

