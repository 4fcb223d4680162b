#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
*-representations, *-anti representations and Jordan representations stored
extensionally: the image of every matrix unit of the algebra.
"""

import numpy as np
import scipy.linalg

from jordannorm.algebra import (
    adjoint,
    adjoint_index,
    mul,
    random_element,
    structure_constants,
)
from jordannorm.algebra.linalg import max_abs
from jordannorm.utils.errors import ShapeError


class StarRepTable(object):
    """
    Linear map of an algebra into K x K matrices given by the images of the
    matrix units in the global basis order.
    """

    def __init__(self, alg, space_dim, images):
        """
        Args:
            alg (FdAlgebra): the represented algebra.
            space_dim (int): dimension K of the representation space.
            images (array-like): dim(A) x K x K array of matrix unit images.
        """
        images = np.array(images, dtype=np.complex128)
        if images.shape != (alg.dim, space_dim, space_dim):
            raise ShapeError(
                "Expected images of shape {}, got {}".format(
                    (alg.dim, space_dim, space_dim), images.shape
                )
            )
        if not np.all(np.isfinite(images)):
            raise ValueError("Representation images must be finite")
        images.setflags(write=False)
        self._alg = alg
        self._space_dim = int(space_dim)
        self._images = images

    @property
    def alg(self):
        return self._alg

    @property
    def space_dim(self):
        return self._space_dim

    @property
    def images(self):
        return self._images

    def image(self, a):
        """Image of an element by linear extension."""
        if a.algebra != self._alg:
            raise ShapeError(
                "Table on {} applied to element of {}".format(
                    self._alg, a.algebra
                )
            )
        return np.tensordot(a.vec(), self._images, axes=1)

    def direct_sum(self, other):
        if other.alg != self._alg:
            raise ShapeError("Direct sum of tables on different algebras")
        images = [
            scipy.linalg.block_diag(x, y)
            for x, y in zip(self._images, other.images)
        ]
        return StarRepTable(
            self._alg, self._space_dim + other.space_dim, images
        )

    def __repr__(self):
        return "StarRepTable({}, space_dim={})".format(
            self._alg, self._space_dim
        )


def identity_table(alg):
    """pi(a) = a_1 + ... + a_m acting on C^{d_1 + ... + d_m}."""
    images = []
    for p in range(alg.dim):
        vec = np.zeros(alg.dim, dtype=np.complex128)
        vec[p] = 1.0
        images.append(scipy.linalg.block_diag(*alg.vec_to_blocks(vec)))
    return StarRepTable(alg, sum(alg.block_dims), images)


def transpose_table(alg):
    """rho(a) = a_1^T + ... + a_m^T, a *-anti representation."""
    table = identity_table(alg)
    return StarRepTable(
        alg, table.space_dim, np.transpose(table.images, (0, 2, 1))
    )


def zero_table(alg, space_dim=1):
    return StarRepTable(
        alg, space_dim, np.zeros((alg.dim, space_dim, space_dim))
    )


def multiplicativity_residual(table, reverse=False):
    """
    max |pi(e_p) pi(e_q) - pi(e_p e_q)| over all basis pairs, or with the
    product reversed to pi(e_q e_p) for anti representations.
    """
    images = table.images
    products = structure_constants(table.alg)
    if reverse:
        products = products.T
    residual = 0.0
    zero_image = np.zeros((table.space_dim, table.space_dim))
    for p in range(table.alg.dim):
        lhs = np.einsum("ij,qjk->qik", images[p], images)
        for q in range(table.alg.dim):
            r = products[p, q]
            rhs = images[r] if r >= 0 else zero_image
            residual = max(residual, max_abs(lhs[q] - rhs))
    return residual


def self_adjoint_residual(table):
    """max |pi(e_p^*) - pi(e_p)^*|."""
    images = table.images
    adj = adjoint_index(table.alg)
    return max_abs(images[adj] - np.conj(np.transpose(images, (0, 2, 1))))


class JordanRep(object):
    """
    Orthogonal sum of a *-representation (the rep part) and a *-anti
    representation (the anti part). The rep part occupies the leading
    coordinates of the space.
    """

    def __init__(self, rep_part=None, anti_part=None):
        if rep_part is None and anti_part is None:
            raise ShapeError("A Jordan representation needs at least one part")
        if (
            rep_part is not None
            and anti_part is not None
            and rep_part.alg != anti_part.alg
        ):
            raise ShapeError("Rep and anti parts act on different algebras")
        self._rep_part = rep_part
        self._anti_part = anti_part
        parts = [t for t in (rep_part, anti_part) if t is not None]
        self._alg = parts[0].alg
        images = [
            scipy.linalg.block_diag(*[t.images[p] for t in parts])
            for p in range(self._alg.dim)
        ]
        self._images = np.array(images, dtype=np.complex128).reshape(
            self._alg.dim, self.space_dim, self.space_dim
        )
        self._images.setflags(write=False)

    @property
    def alg(self):
        return self._alg

    @property
    def rep_part(self):
        return self._rep_part

    @property
    def anti_part(self):
        return self._anti_part

    @property
    def rep_dim(self):
        return 0 if self._rep_part is None else self._rep_part.space_dim

    @property
    def anti_dim(self):
        return 0 if self._anti_part is None else self._anti_part.space_dim

    @property
    def space_dim(self):
        return self.rep_dim + self.anti_dim

    @property
    def images(self):
        return self._images

    def image(self, a):
        if a.algebra != self._alg:
            raise ShapeError(
                "Jordan representation on {} applied to element of {}".format(
                    self._alg, a.algebra
                )
            )
        return np.tensordot(a.vec(), self._images, axes=1)

    def direct_sum(self, other):
        """
        Orthogonal sum keeping the rep/anti storage order.
        Returns:
            rep (JordanRep): rep part is the sum of the rep parts, anti part
                the sum of the anti parts.
            perm (ndarray): perm[i] is the coordinate of the concatenated space
                (self first, then other) stored at position i of `rep`.
        """
        if other.alg != self._alg:
            raise ShapeError("Direct sum of Jordan reps on different algebras")
        rep = _sum_tables(self._rep_part, other.rep_part)
        anti = _sum_tables(self._anti_part, other.anti_part)
        k1 = self.space_dim
        perm = np.concatenate(
            [
                np.arange(self.rep_dim),
                k1 + np.arange(other.rep_dim),
                self.rep_dim + np.arange(self.anti_dim),
                k1 + other.rep_dim + np.arange(other.anti_dim),
            ]
        ).astype(np.int64)
        return JordanRep(rep, anti), perm

    def __repr__(self):
        return "JordanRep({}, rep_dim={}, anti_dim={})".format(
            self._alg, self.rep_dim, self.anti_dim
        )


def _sum_tables(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return x.direct_sum(y)


def validate_jordan_rep(rep, positivity_trials=8, seed=0):
    """
    Residuals of the defining identities of a Jordan representation.
    Returns:
        residuals (dict): `multiplicativity` of the rep part,
            `anti_multiplicativity` of the anti part, `self_adjointness` and
            `positivity` (largest negative eigenvalue of sigma(a^* a) over
            random a, scaled by the norm of the image).
    """
    residuals = {
        "multiplicativity": 0.0,
        "anti_multiplicativity": 0.0,
        "self_adjointness": self_adjoint_residual_jordan(rep),
        "positivity": 0.0,
    }
    if rep.rep_part is not None:
        residuals["multiplicativity"] = multiplicativity_residual(
            rep.rep_part
        )
    if rep.anti_part is not None:
        residuals["anti_multiplicativity"] = multiplicativity_residual(
            rep.anti_part, reverse=True
        )
    rng = np.random.default_rng(seed)
    for _ in range(positivity_trials):
        a = random_element(rep.alg, rng)
        image = rep.image(mul(adjoint(a), a))
        image = 0.5 * (image + image.conj().T)
        w = np.linalg.eigvalsh(image)
        scale = max(1.0, float(np.abs(w).max()))
        residuals["positivity"] = max(
            residuals["positivity"], float(-w.min()) / scale
        )
    return residuals


def self_adjoint_residual_jordan(rep):
    return max(
        self_adjoint_residual(t)
        for t in (rep.rep_part, rep.anti_part)
        if t is not None
    )
