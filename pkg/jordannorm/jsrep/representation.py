#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Jordan-Stinespring representations of multilinear maps,

    Phi(a_1, ..., a_n) = T_0 sigma_1(a_1) T_1 ... sigma_n(a_n) T_n,

with Jordan representations sigma_i on K_i, T_0 in B(K_1, H), T_i in
B(K_{i+1}, K_i) and T_n in B(G, K_n). The product of the operator norms is an
upper bound of the Jordan norm of Phi.
"""

import numpy as np
import scipy.linalg

import jordannorm.utils.logging as logging
from jordannorm.algebra.linalg import as_complex_matrix, spectral_norm
from jordannorm.jsrep.star_rep import (
    JordanRep,
    validate_jordan_rep,
    zero_table,
)
from jordannorm.utils.errors import ShapeError, ZeroOperatorError

logger = logging.get_logger(__name__)


class JSRep(object):
    """
    A Jordan-Stinespring representation of an n-linear map.
    """

    def __init__(self, reps, operators, splitting=None):
        """
        Args:
            reps (list): the Jordan representations sigma_1, ..., sigma_n.
            operators (list): the n + 1 operators T_0, ..., T_n.
            splitting (dict, optional): summand dimensions of a factorization
                built from four witness states, used to split it into four
                pieces.
        """
        self._reps = tuple(reps)
        self._operators = tuple(as_complex_matrix(t) for t in operators)
        self._splitting = None if splitting is None else dict(splitting)
        check_shapes(self)

    @property
    def arity(self):
        return len(self._reps)

    @property
    def algebras(self):
        return tuple(r.alg for r in self._reps)

    @property
    def reps(self):
        return self._reps

    @property
    def dims(self):
        return tuple(r.space_dim for r in self._reps)

    @property
    def operators(self):
        return self._operators

    @property
    def target_dim(self):
        """Dimension of H."""
        return self._operators[0].shape[0]

    @property
    def source_dim(self):
        """Dimension of G."""
        return self._operators[-1].shape[1]

    @property
    def splitting(self):
        return self._splitting

    def replace_operators(self, operators, keep_splitting=True):
        return JSRep(
            self._reps,
            operators,
            self._splitting if keep_splitting else None,
        )

    def __call__(self, *elements):
        return evaluate(self, *elements)

    def __repr__(self):
        return "JSRep(arity={}, dims={}, H={}, G={})".format(
            self.arity, self.dims, self.target_dim, self.source_dim
        )


def check_shapes(rep):
    """
    Raise ShapeError unless the operators chain through the representation
    spaces.
    """
    ops = rep.operators
    if rep.arity < 1:
        raise ShapeError("A representation needs arity at least one")
    if len(ops) != rep.arity + 1:
        raise ShapeError(
            "Arity {} needs {} operators, got {}".format(
                rep.arity, rep.arity + 1, len(ops)
            )
        )
    for i, sigma in enumerate(rep.reps):
        k = sigma.space_dim
        if ops[i].shape[1] != k or ops[i + 1].shape[0] != k:
            raise ShapeError(
                "Operators T_{} {} and T_{} {} do not chain through K_{} of "
                "dimension {}".format(
                    i, ops[i].shape, i + 1, ops[i + 1].shape, i + 1, k
                )
            )


class ValidationReport(object):
    """
    Residuals of a Jordan-Stinespring representation and the verdict.
    """

    def __init__(self, residuals, tol):
        self.residuals = residuals
        self.tol = tol

    @property
    def max_residual(self):
        return max(
            [0.0] + [v for r in self.residuals for v in r.values()]
        )

    @property
    def passed(self):
        return self.max_residual < self.tol

    def as_dict(self):
        return {
            "residuals": self.residuals,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "passed": self.passed,
        }


def validate(rep, tol=1e-8, positivity_trials=8, seed=0):
    """
    Check every sigma_i for (anti-)multiplicativity, self-adjointness and
    positivity on the full basis.
    Args:
        rep (JSRep): the representation.
        tol (float): every residual must be below tol.
    Returns:
        report (ValidationReport): per-sigma residuals, shape_chain included.
    """
    check_shapes(rep)
    residuals = []
    for sigma in rep.reps:
        res = validate_jordan_rep(sigma, positivity_trials, seed)
        res["shape_chain"] = 0.0
        residuals.append(res)
    report = ValidationReport(residuals, tol)
    if not report.passed:
        logger.info(
            "Representation failed validation, max residual {:.3e}".format(
                report.max_residual
            )
        )
    return report


def evaluate(rep, *elements):
    """
    T_0 sigma_1(a_1) T_1 ... sigma_n(a_n) T_n.
    Returns:
        out (ndarray): H x G complex matrix.
    """
    if len(elements) != rep.arity:
        raise ShapeError(
            "Representation of arity {} called with {} elements".format(
                rep.arity, len(elements)
            )
        )
    out = rep.operators[0]
    for sigma, a, t in zip(rep.reps, elements, rep.operators[1:]):
        out = out @ sigma.image(a) @ t
    return out


def operator_norms(rep):
    return [spectral_norm(t) for t in rep.operators]


def bound(rep):
    """
    ||T_0|| ... ||T_n||, an upper bound of the Jordan norm.
    """
    return float(np.prod(operator_norms(rep)))


def normalize(rep):
    """
    Rescale so that ||T_0|| = ||T_n|| and ||T_i|| = 1 for 0 < i < n. The
    evaluation and the bound do not change.
    """
    norms = operator_norms(rep)
    if min(norms) == 0.0:
        raise ZeroOperatorError(
            "Can not normalize a representation with a zero operator "
            "(norms {})".format(norms)
        )
    end = np.sqrt(np.prod(norms))
    scales = [end / norms[0]]
    scales += [1.0 / x for x in norms[1:-1]]
    scales += [end / norms[-1]]
    return rep.replace_operators(
        [s * t for s, t in zip(scales, rep.operators)]
    )


def is_zero_map(rep):
    """True if Phi vanishes on every tuple of matrix units."""
    return min(operator_norms(rep)) == 0.0 or not np.any(
        basis_images(rep)
    )


def basis_images(rep):
    """
    Phi on every tuple of matrix units.
    Returns:
        images (ndarray): shape dim(A_1) x ... x dim(A_n) x H x G.
    """
    out = rep.operators[0][np.newaxis]
    for sigma, t in zip(rep.reps, rep.operators[1:]):
        out = np.einsum("...hk,pkl->...phl", out, sigma.images) @ t
    return out[0]


def direct_sum(rep1, rep2):
    """
    Representation of Phi_1 + Phi_2 with

        T_0 = [S_0  T_0],  T_i = diag(S_i, T_i),  T_n = [S_n ; T_n]

    built from the normalized summands, so that its bound is at most the sum
    of the two bounds. Raises ZeroOperatorError when a summand has a zero
    operator; callers handle the zero map themselves.
    """
    if rep1.arity != rep2.arity or rep1.algebras != rep2.algebras:
        raise ShapeError("Summands act on different algebras")
    if (
        rep1.target_dim != rep2.target_dim
        or rep1.source_dim != rep2.source_dim
    ):
        raise ShapeError("Summands map between different spaces")
    rep1 = normalize(rep1)
    rep2 = normalize(rep2)
    n = rep1.arity
    s, t = rep1.operators, rep2.operators
    reps = []
    perms = []
    for x, y in zip(rep1.reps, rep2.reps):
        sigma, perm = x.direct_sum(y)
        reps.append(sigma)
        perms.append(perm)
    ops = [np.hstack([s[0], t[0]])[:, perms[0]]]
    for i in range(1, n):
        middle = scipy.linalg.block_diag(s[i], t[i])
        ops.append(middle[perms[i - 1]][:, perms[i]])
    ops.append(np.vstack([s[n], t[n]])[perms[n - 1]])
    return JSRep(reps, ops)


def add(rep1, rep2):
    """
    direct_sum with the zero map short-circuited: a summand vanishing on the
    basis is dropped.
    """
    if is_zero_map(rep2):
        return rep1
    if is_zero_map(rep1):
        return rep2
    return direct_sum(rep1, rep2)


def zero_representation(algebras, target_dim, source_dim):
    """
    Representation of the zero map, one-dimensional spaces carrying the zero
    *-representation and zero operators.
    """
    reps = [JordanRep(rep_part=zero_table(alg, 1)) for alg in algebras]
    ops = [np.zeros((target_dim, 1))]
    ops += [np.zeros((1, 1)) for _ in range(len(algebras) - 1)]
    ops += [np.zeros((1, source_dim))]
    return JSRep(reps, ops)
