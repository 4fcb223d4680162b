#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Bilinear forms on pairs of algebras and linear maps into Hilbert spaces."""

import numpy as np

from jordannorm.algebra import FdAlgebra, State, adjoint_index, basis_index
from jordannorm.algebra.linalg import as_complex_matrix
from jordannorm.utils.errors import ShapeError


class BilinearForm(object):
    """
    B(x, y) = vec(x)^T C vec(y) on A x B, in the global basis order.
    """

    def __init__(self, alg_a, alg_b, coeffs):
        """
        Args:
            alg_a (FdAlgebra): algebra of the first argument.
            alg_b (FdAlgebra): algebra of the second argument.
            coeffs (array-like): dim(A) x dim(B) coefficient matrix.
        """
        try:
            self._coeffs = as_complex_matrix(
                coeffs, rows=alg_a.dim, cols=alg_b.dim
            )
        except ValueError as e:
            raise ShapeError("Invalid form coefficients: {}".format(e))
        self._alg_a = alg_a
        self._alg_b = alg_b

    @property
    def alg_a(self):
        return self._alg_a

    @property
    def alg_b(self):
        return self._alg_b

    @property
    def coeffs(self):
        return self._coeffs

    def is_square(self):
        return self._alg_a == self._alg_b

    def is_zero(self):
        return not np.any(self._coeffs)

    def scale(self, c):
        return BilinearForm(self._alg_a, self._alg_b, c * self._coeffs)

    def __add__(self, other):
        _check_form_algebras(self, other.alg_a, other.alg_b)
        return BilinearForm(
            self._alg_a, self._alg_b, self._coeffs + other.coeffs
        )

    def __call__(self, x, y):
        return eval_form(self, x, y)

    def __repr__(self):
        return "BilinearForm({}, {})".format(self._alg_a, self._alg_b)


class HilbertMap(object):
    """
    Linear map F: A -> C^m acting on coordinates, F(a) = M vec(a).
    """

    def __init__(self, alg, target_dim, matrix):
        """
        Args:
            alg (FdAlgebra): source algebra.
            target_dim (int): dimension m of the target Hilbert space.
            matrix (array-like): m x dim(A) matrix.
        """
        try:
            self._matrix = as_complex_matrix(
                matrix, rows=target_dim, cols=alg.dim
            )
        except ValueError as e:
            raise ShapeError("Invalid map matrix: {}".format(e))
        self._alg = alg
        self._target_dim = int(target_dim)

    @property
    def alg(self):
        return self._alg

    @property
    def target_dim(self):
        return self._target_dim

    @property
    def matrix(self):
        return self._matrix

    def is_zero(self):
        return not np.any(self._matrix)

    def scale(self, c):
        return HilbertMap(self._alg, self._target_dim, c * self._matrix)

    def __call__(self, a):
        if a.algebra != self._alg:
            raise ShapeError(
                "Map on {} applied to element of {}".format(
                    self._alg, a.algebra
                )
            )
        return self._matrix @ a.vec()

    def __repr__(self):
        return "HilbertMap({}, {})".format(self._alg, self._target_dim)


def _check_form_algebras(form, alg_a, alg_b):
    if form.alg_a != alg_a or form.alg_b != alg_b:
        raise ShapeError(
            "Form on {} x {} used with {} x {}".format(
                form.alg_a, form.alg_b, alg_a, alg_b
            )
        )


def eval_form(form, x, y):
    """
    B(x, y) = vec(x)^T C vec(y).
    """
    _check_form_algebras(form, x.algebra, y.algebra)
    return complex(x.vec() @ form.coeffs @ y.vec())


def product_form(phi, psi):
    """
    B(x, y) = phi(x) psi(y) for two states (or any functionals given as
    states).
    """
    if not isinstance(phi, State) or not isinstance(psi, State):
        raise TypeError("product_form expects two states")
    coeffs = np.outer(phi.coefficient_vec(), psi.coefficient_vec())
    return BilinearForm(phi.algebra, psi.algebra, coeffs)


def trace_form(alg, scale=None):
    """
    B(x, y) = scale * sum_i Tr(x_i y_i). The default scale 1 / sum_i d_i
    gives a form of norm one, Tr(xy)/d on M_d.
    """
    if scale is None:
        scale = 1.0 / sum(alg.block_dims)
    coeffs = np.zeros((alg.dim, alg.dim), dtype=np.complex128)
    # Tr(xy) pairs e_ij with e_ji.
    transpose = adjoint_index(alg)
    coeffs[np.arange(alg.dim), transpose] = scale
    return BilinearForm(alg, alg, coeffs)


def corner_form(d):
    """
    B(x, y) = (yx)_{11} on M_d x M_d: bounded with norm one but not
    completely bounded as d grows.
    """
    alg = FdAlgebra([d])
    coeffs = np.zeros((alg.dim, alg.dim), dtype=np.complex128)
    for k in range(d):
        # (yx)_11 = sum_k y_1k x_k1.
        coeffs[basis_index(alg, 0, k, 0), basis_index(alg, 0, 0, k)] = 1.0
    return BilinearForm(alg, alg, coeffs)


def random_low_rank_form(alg_a, alg_b, rank, rng):
    """
    Sum of `rank` random complex rank-one coefficient matrices, normalized to
    unit Frobenius norm.
    Args:
        rng (np.random.Generator): source of randomness.
    """
    coeffs = np.zeros((alg_a.dim, alg_b.dim), dtype=np.complex128)
    for _ in range(rank):
        u = rng.standard_normal(alg_a.dim) + 1j * rng.standard_normal(alg_a.dim)
        v = rng.standard_normal(alg_b.dim) + 1j * rng.standard_normal(alg_b.dim)
        coeffs += np.outer(u, v)
    norm = np.linalg.norm(coeffs)
    if norm > 0:
        coeffs /= norm
    return BilinearForm(alg_a, alg_b, coeffs)


def row_extraction(d, row=0):
    """
    F(x) = (x_{row, k})_k from M_d to C^d.
    """
    alg = FdAlgebra([d])
    matrix = np.zeros((d, alg.dim), dtype=np.complex128)
    for k in range(d):
        matrix[k, basis_index(alg, 0, row, k)] = 1.0
    return HilbertMap(alg, d, matrix)


def column_map(d, column=0):
    """
    F(a) = a delta_column from M_d to C^d.
    """
    alg = FdAlgebra([d])
    matrix = np.zeros((d, alg.dim), dtype=np.complex128)
    for k in range(d):
        matrix[k, basis_index(alg, 0, k, column)] = 1.0
    return HilbertMap(alg, d, matrix)


def random_hilbert_map(alg, target_dim, rng, rank=None):
    """
    Random map with at most `rank` nonzero singular values, unit Frobenius
    norm.
    """
    rank = target_dim if rank is None else rank
    left = rng.standard_normal((target_dim, rank)) + 1j * rng.standard_normal(
        (target_dim, rank)
    )
    right = rng.standard_normal((rank, alg.dim)) + 1j * rng.standard_normal(
        (rank, alg.dim)
    )
    matrix = left @ right
    norm = np.linalg.norm(matrix)
    if norm > 0:
        matrix /= norm
    return HilbertMap(alg, target_dim, matrix)
