#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
GNS construction of a state on a finite dimensional C*-algebra, the basis
conjugation J fixing the cyclic vector, and the *-anti representation
rho(a) = J pi(a^*) J.
"""

import numpy as np
import scipy.linalg

import jordannorm.utils.logging as logging
from jordannorm.algebra import (
    adjoint,
    adjoint_index,
    apply_state,
    basis_element,
    identity,
    left_gram,
    mul,
    random_element,
)
from jordannorm.algebra.linalg import eigh_truncated, gram_schmidt_completion
from jordannorm.jsrep import (
    JordanRep,
    StarRepTable,
    multiplicativity_residual,
)
from jordannorm.utils.errors import ShapeError

logger = logging.get_logger(__name__)


class GnsData(object):
    """
    Hilbert space H_phi = A / N_phi, cyclic vector xi, *-representation pi
    and *-anti representation rho of a state phi.
    """

    def __init__(
        self, alg, state, gram, embed, cyclic_vector, pi, conjugation_basis,
        rho,
    ):
        """
        Args:
            alg (FdAlgebra): the algebra.
            state (State): the state phi.
            gram (ndarray): gram[p, q] = phi(e_p^* e_q).
            embed (ndarray): space_dim x dim(A), maps vec(a) to its class.
            cyclic_vector (ndarray): xi, the class of the identity.
            pi (StarRepTable): left multiplication on the quotient.
            conjugation_basis (ndarray): unitary whose first column is xi; J
                conjugates coordinates in this basis.
            rho (StarRepTable): rho(a) = J pi(a^*) J.
        """
        self.alg = alg
        self.state = state
        self.gram = gram
        self.embed = embed
        self.cyclic_vector = cyclic_vector
        self.pi = pi
        self.conjugation_basis = conjugation_basis
        self.rho = rho

    @property
    def space_dim(self):
        return self.embed.shape[0]

    @property
    def kernel_dim(self):
        return self.alg.dim - self.space_dim

    def conjugate(self, v):
        """
        J v: conjugate the coordinates of v in the conjugation basis.
        """
        basis = self.conjugation_basis
        return basis @ np.conj(basis.conj().T @ v)

    def rep(self):
        """pi as a Jordan representation with only a rep part."""
        return JordanRep(rep_part=self.pi)

    def anti_rep(self):
        """rho as a Jordan representation with only an anti part."""
        return JordanRep(anti_part=self.rho)

    def __repr__(self):
        return "GnsData({}, space_dim={})".format(self.alg, self.space_dim)


def _left_multiplication(a):
    # vec(a x) = L(a) vec(x) in the row-major order, blockwise.
    return scipy.linalg.block_diag(
        *[np.kron(b, np.eye(b.shape[0])) for b in a.blocks]
    )


def gns_construct(alg, phi, kernel_tol=1e-12, psd_tol=1e-9):
    """
    GNS construction of a state.
    Args:
        alg (FdAlgebra): the algebra.
        phi (State): a state on `alg`.
        kernel_tol (float): eigenvalues of the Gram matrix below kernel_tol
            times the largest eigenvalue span the kernel N_phi.
        psd_tol (float): a Gram eigenvalue below -psd_tol times the largest
            one marks an invalid state.
    Returns:
        data (GnsData): the constructed data.
    """
    if phi.algebra != alg:
        raise ShapeError(
            "State on {} used for GNS of {}".format(phi.algebra, alg)
        )
    gram = left_gram(phi)
    w, u, min_eig = eigh_truncated(gram, kernel_tol)
    if min_eig < -psd_tol * max(w.max() if w.size else 0.0, 1.0):
        raise ValueError(
            "Gram matrix of the state is not positive semi-definite "
            "(min eigenvalue {:.3e})".format(min_eig)
        )
    embed = np.sqrt(w)[:, np.newaxis] * u.conj().T
    lift = u / np.sqrt(w)[np.newaxis, :]

    n = alg.dim
    images = np.zeros((n, w.size, w.size), dtype=np.complex128)
    for p in range(n):
        images[p] = embed @ _left_multiplication(basis_element(alg, p)) @ lift
    pi = StarRepTable(alg, w.size, images)

    xi = embed @ identity(alg).vec()
    xi = xi / np.linalg.norm(xi)
    basis = gram_schmidt_completion(xi)
    # J v = C conj(v) with C = V V^T, so J pi(a^*) J = C conj(pi(a^*)) C^*.
    sym = basis @ basis.T
    adj = adjoint_index(alg)
    rho_images = np.einsum(
        "ij,pjk,kl->pil", sym, np.conj(images[adj]), sym.conj().T
    )
    rho = StarRepTable(alg, w.size, rho_images)
    logger.debug(
        "GNS of {}: space dim {}, kernel dim {}".format(
            alg, w.size, n - w.size
        )
    )
    return GnsData(alg, phi, gram, embed, xi, pi, basis, rho)


def verify_gns(data, trials=100, seed=0):
    """
    Residuals of the GNS identities over random elements:
        phi(a^* a) = ||pi(a) xi||^2,  phi(a a^*) = ||rho(a) xi||^2,
        <J alpha, beta> = <J beta, alpha>,
    together with J xi = xi, the inner product and intertwining properties of
    the embedding, and anti-multiplicativity of rho on basis pairs. The first
    trial uses the identity.
    Returns:
        residuals (dict): maximal residual per identity.
    """
    rng = np.random.default_rng(seed)
    alg, phi, xi = data.alg, data.state, data.cyclic_vector
    res = {
        "pi_identity": 0.0,
        "rho_identity": 0.0,
        "conjugation": 0.0,
        "intertwining": 0.0,
    }
    for t in range(trials):
        a = identity(alg) if t == 0 else random_element(alg, rng)
        lhs_pi = apply_state(phi, mul(adjoint(a), a)).real
        lhs_rho = apply_state(phi, mul(a, adjoint(a))).real
        rhs_pi = np.linalg.norm(data.pi.image(a) @ xi) ** 2
        rhs_rho = np.linalg.norm(data.rho.image(a) @ xi) ** 2
        res["pi_identity"] = max(res["pi_identity"], abs(lhs_pi - rhs_pi))
        res["rho_identity"] = max(res["rho_identity"], abs(lhs_rho - rhs_rho))

        x = random_element(alg, rng)
        moved = data.pi.image(a) @ (data.embed @ x.vec())
        res["intertwining"] = max(
            res["intertwining"],
            float(np.abs(moved - data.embed @ mul(a, x).vec()).max()),
        )

        k = data.space_dim
        alpha = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        beta = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        left = np.vdot(beta, data.conjugate(alpha))
        right = np.vdot(alpha, data.conjugate(beta))
        res["conjugation"] = max(res["conjugation"], abs(left - right))

    res["cyclic_fixed"] = float(
        np.abs(data.conjugate(xi) - xi).max() if xi.size else 0.0
    )
    res["inner_product"] = float(
        np.abs(data.embed.conj().T @ data.embed - data.gram).max()
    )
    res["rho_anti_multiplicativity"] = multiplicativity_residual(
        data.rho, reverse=True
    )
    return res
