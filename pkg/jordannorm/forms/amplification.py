#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Matrix amplifications B_n of bilinear forms and the corner-form example."""

import numpy as np

from jordannorm.algebra import basis_index, zero
from jordannorm.algebra.linalg import spectral_norm
from jordannorm.algebra.fd_algebra import AlgElement
from jordannorm.forms.bilinear import corner_form, eval_form
from jordannorm.utils.errors import ShapeError


def _check_square_array(arr, n, algebra, name):
    if len(arr) != n or any(len(row) != n for row in arr):
        raise ShapeError("{} must be an {} x {} array".format(name, n, n))
    for row in arr:
        for entry in row:
            if entry.algebra != algebra:
                raise ShapeError(
                    "{} has an entry in {} instead of {}".format(
                        name, entry.algebra, algebra
                    )
                )


def amplified_eval(form, n, X, Y):
    """
    B_n(X, Y)_{kl} = sum_j B(X_{kj}, Y_{jl}).
    Args:
        form (BilinearForm): the form B on A x B.
        n (int): amplification order.
        X (list): n x n nested list of elements of A.
        Y (list): n x n nested list of elements of B.
    Returns:
        out (ndarray): n x n complex matrix.
    """
    assert n >= 1, "Amplification order must be positive, got {}".format(n)
    _check_square_array(X, n, form.alg_a, "X")
    _check_square_array(Y, n, form.alg_b, "Y")
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        for l in range(n):
            out[k, l] = sum(eval_form(form, X[k][j], Y[j][l]) for j in range(n))
    return out


def amplified_op_norm(X):
    """
    Norm of X in M_n(A). Block b of A contributes the (n d_b) x (n d_b)
    matrix whose (k, l) block is the b-th block of X_{kl}.
    """
    n = len(X)
    algebra = X[0][0].algebra
    norms = []
    for b, d in enumerate(algebra.block_dims):
        big = np.zeros((n * d, n * d), dtype=np.complex128)
        for k in range(n):
            for l in range(n):
                big[k * d:(k + 1) * d, l * d:(l + 1) * d] = X[k][l].blocks[b]
        norms.append(spectral_norm(big))
    return max(norms)


def cb_lower_bound(form, n, X, Y):
    """
    ||B_n|| >= ||B_n(X, Y)|| / (||X|| ||Y||).
    """
    denom = amplified_op_norm(X) * amplified_op_norm(Y)
    if denom == 0.0:
        return 0.0
    return spectral_norm(amplified_eval(form, n, X, Y)) / denom


def embed_corner(x, n):
    """
    x (x) f_11: the n x n array with x in the (1, 1) slot and zeros elsewhere.
    """
    arr = [[zero(x.algebra) for _ in range(n)] for _ in range(n)]
    arr[0][0] = x
    return arr


class CornerExample(object):
    """
    The form B(x, y) = (yx)_{11} on M_n with the partial isometries
    X = sum_k e_{k1} (x) f_{1k} and Y = sum_k e_{1k} (x) f_{k1}.
    """

    def __init__(self, form, X, Y, amplified, x_norm, y_norm):
        self.form = form
        self.X = X
        self.Y = Y
        self.amplified = amplified
        self.x_norm = x_norm
        self.y_norm = y_norm

    @property
    def n(self):
        return len(self.X)

    def corner_value(self):
        """The (1, 1) entry of B_n(X, Y), equal to n."""
        return self.amplified[0, 0]


def corner_example(n):
    """
    Builds the corner form on M_n and the elements X, Y of M_n(M_n) for
    which B_n(X, Y) = n e_{11} while ||X|| = ||Y|| = ||B|| = 1, so that
    ||B_n|| >= n.
    Args:
        n (int): matrix size and amplification order.
    Returns:
        example (CornerExample): form, X, Y, B_n(X, Y) and the norms of X, Y.
    """
    assert n >= 1, "n must be positive, got {}".format(n)
    form = corner_form(n)
    alg = form.alg_a

    def unit(i, j):
        vec = np.zeros(alg.dim, dtype=np.complex128)
        vec[basis_index(alg, 0, i, j)] = 1.0
        return AlgElement.from_vec(alg, vec)

    X = [[zero(alg) for _ in range(n)] for _ in range(n)]
    Y = [[zero(alg) for _ in range(n)] for _ in range(n)]
    for k in range(n):
        X[0][k] = unit(k, 0)
        Y[k][0] = unit(0, k)
    amplified = amplified_eval(form, n, X, Y)
    return CornerExample(
        form, X, Y, amplified, amplified_op_norm(X), amplified_op_norm(Y)
    )
