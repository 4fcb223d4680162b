#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
Finite dimensional C*-algebras, their elements and states.

A finite dimensional C*-algebra is a direct sum M_{d_1} + ... + M_{d_m} of
full complex matrix blocks. Every vectorization in the package uses the same
global basis order: blocks in declaration order, and inside a block of size d
the matrix units e_ij with i outer and j inner (row-major).
"""

import functools
import numpy as np
import scipy.linalg

from jordannorm.algebra.linalg import as_complex_matrix, hermitian_part
from jordannorm.utils.errors import ShapeError


class FdAlgebra(object):
    """
    The algebra M_{d_1} + ... + M_{d_m}.
    """

    def __init__(self, block_dims):
        """
        Args:
            block_dims (list): positive block sizes [d_1, ..., d_m].
        """
        block_dims = tuple(int(d) for d in block_dims)
        if len(block_dims) == 0:
            raise ShapeError("An algebra needs at least one block")
        if any(d <= 0 for d in block_dims):
            raise ShapeError(
                "Block sizes must be positive, got {}".format(block_dims)
            )
        self._block_dims = block_dims
        self._offsets = tuple(
            int(x) for x in np.cumsum([0] + [d * d for d in block_dims])
        )

    @property
    def block_dims(self):
        return self._block_dims

    @property
    def num_blocks(self):
        return len(self._block_dims)

    @property
    def dim(self):
        """Total vector space dimension, the sum of d_i^2."""
        return self._offsets[-1]

    def block_slice(self, block):
        """Slice of the global vectorization occupied by `block`."""
        return slice(self._offsets[block], self._offsets[block + 1])

    def is_commutative(self):
        return all(d == 1 for d in self._block_dims)

    def __eq__(self, other):
        return (
            isinstance(other, FdAlgebra)
            and self._block_dims == other._block_dims
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._block_dims)

    def __repr__(self):
        return "FdAlgebra({})".format(list(self._block_dims))

    def vec_to_blocks(self, vec):
        """
        Split a global coordinate vector into per-block square matrices.
        """
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (self.dim,):
            raise ShapeError(
                "Expected a vector of length {}, got shape {}".format(
                    self.dim, vec.shape
                )
            )
        return [
            vec[self.block_slice(i)].reshape(d, d)
            for i, d in enumerate(self._block_dims)
        ]

    def blocks_to_vec(self, blocks):
        return np.concatenate([np.asarray(b).reshape(-1) for b in blocks])


class AlgElement(object):
    """
    An element of a finite dimensional C*-algebra stored block by block.
    """

    def __init__(self, algebra, blocks):
        """
        Args:
            algebra (FdAlgebra): the ambient algebra.
            blocks (list): one d_i x d_i matrix per block.
        """
        if len(blocks) != algebra.num_blocks:
            raise ShapeError(
                "Expected {} blocks, got {}".format(
                    algebra.num_blocks, len(blocks)
                )
            )
        try:
            self._blocks = tuple(
                as_complex_matrix(b, rows=d, cols=d)
                for b, d in zip(blocks, algebra.block_dims)
            )
        except ValueError as e:
            raise ShapeError("Invalid element block: {}".format(e))
        self._algebra = algebra

    @classmethod
    def from_vec(cls, algebra, vec):
        return cls(algebra, algebra.vec_to_blocks(vec))

    @property
    def algebra(self):
        return self._algebra

    @property
    def blocks(self):
        return self._blocks

    def vec(self):
        """Coordinates in the global basis order."""
        return self._algebra.blocks_to_vec(self._blocks)

    def __add__(self, other):
        _check_same_algebra(self, other)
        return AlgElement(
            self._algebra, [x + y for x, y in zip(self._blocks, other._blocks)]
        )

    def __sub__(self, other):
        _check_same_algebra(self, other)
        return AlgElement(
            self._algebra, [x - y for x, y in zip(self._blocks, other._blocks)]
        )

    def scale(self, c):
        return AlgElement(self._algebra, [c * x for x in self._blocks])

    def __repr__(self):
        return "AlgElement({}, {})".format(
            self._algebra, [b.tolist() for b in self._blocks]
        )


class State(object):
    """
    A state given by block density matrices, phi(a) = sum_i Tr(rho_i a_i).
    """

    def __init__(self, algebra, densities, psd_tol=1e-9, trace_tol=1e-9):
        """
        Args:
            algebra (FdAlgebra): the ambient algebra.
            densities (list): one d_i x d_i positive semi-definite matrix per
                block; the traces must sum to one.
            psd_tol (float): eigenvalues down to -psd_tol times the largest
                eigenvalue are accepted and clipped to zero.
            trace_tol (float): allowed deviation of the total trace from one.
        """
        if len(densities) != algebra.num_blocks:
            raise ShapeError(
                "Expected {} densities, got {}".format(
                    algebra.num_blocks, len(densities)
                )
            )
        try:
            mats = [
                as_complex_matrix(r, rows=d, cols=d)
                for r, d in zip(densities, algebra.block_dims)
            ]
        except ValueError as e:
            raise ShapeError("Invalid density block: {}".format(e))
        top = max(
            float(np.abs(np.linalg.eigvalsh(hermitian_part(m))).max())
            for m in mats
        )
        clipped = []
        for m in mats:
            if np.abs(m - m.conj().T).max() > psd_tol * max(top, 1.0):
                raise ValueError("Density blocks must be Hermitian")
            w, v = np.linalg.eigh(hermitian_part(m))
            if w.min() < -psd_tol * top:
                raise ValueError(
                    "Density block is not positive semi-definite, "
                    "min eigenvalue {:.3e}".format(w.min())
                )
            clipped.append(
                as_complex_matrix((v * np.clip(w, 0, None)) @ v.conj().T)
            )
        total = sum(float(np.trace(m).real) for m in clipped)
        if abs(total - 1.0) > trace_tol:
            raise ValueError(
                "Densities must have total trace 1, got {:.12f}".format(total)
            )
        self._algebra = algebra
        self._densities = tuple(clipped)

    @property
    def algebra(self):
        return self._algebra

    @property
    def densities(self):
        return self._densities

    def coefficient_vec(self):
        """Vector c with phi(a) = c . vec(a)."""
        return self._algebra.blocks_to_vec([r.T for r in self._densities])

    def __repr__(self):
        return "State({}, {})".format(
            self._algebra, [r.tolist() for r in self._densities]
        )


def _check_same_algebra(x, y):
    if x.algebra != y.algebra:
        raise ShapeError(
            "Elements live in different algebras: {} and {}".format(
                x.algebra, y.algebra
            )
        )


def identity(algebra):
    return AlgElement(algebra, [np.eye(d) for d in algebra.block_dims])


def zero(algebra):
    return AlgElement(algebra, [np.zeros((d, d)) for d in algebra.block_dims])


@functools.lru_cache(maxsize=None)
def basis_labels(algebra):
    """
    Labels (block, i, j) of the matrix units in the global basis order.
    """
    return tuple(
        (b, i, j)
        for b, d in enumerate(algebra.block_dims)
        for i in range(d)
        for j in range(d)
    )


def basis_element(algebra, p):
    """The p-th matrix unit in the global basis order."""
    vec = np.zeros(algebra.dim, dtype=np.complex128)
    vec[p] = 1.0
    return AlgElement.from_vec(algebra, vec)


def basis_index(algebra, block, i, j):
    d = algebra.block_dims[block]
    return algebra.block_slice(block).start + i * d + j


@functools.lru_cache(maxsize=None)
def adjoint_index(algebra):
    """
    Index map p -> q with e_p^* = e_q.
    """
    return np.array(
        [basis_index(algebra, b, j, i) for (b, i, j) in basis_labels(algebra)],
        dtype=np.int64,
    )


@functools.lru_cache(maxsize=None)
def structure_constants(algebra):
    """
    Multiplication table of the matrix units.
    Returns:
        table (ndarray): dim x dim integer array, table[p, q] is the index r
            of e_p e_q = e_r, or -1 when the product vanishes.
    """
    labels = basis_labels(algebra)
    n = algebra.dim
    table = -np.ones((n, n), dtype=np.int64)
    for p, (bp, i, j) in enumerate(labels):
        for q, (bq, k, l) in enumerate(labels):
            if bp == bq and j == k:
                table[p, q] = basis_index(algebra, bp, i, l)
    table.setflags(write=False)
    return table


def mul(x, y):
    """
    Blockwise matrix product x y.
    """
    _check_same_algebra(x, y)
    return AlgElement(x.algebra, [a @ b for a, b in zip(x.blocks, y.blocks)])


def adjoint(x):
    """
    Blockwise conjugate transpose.
    """
    return AlgElement(x.algebra, [a.conj().T for a in x.blocks])


def op_norm(x):
    """
    C*-norm: the largest singular value over all blocks.
    """
    return max(float(np.linalg.norm(a, 2)) for a in x.blocks)


def apply_state(phi, a):
    """
    Evaluate the state on an element, sum_i Tr(rho_i a_i).
    """
    if phi.algebra != a.algebra:
        raise ShapeError(
            "State on {} applied to element of {}".format(
                phi.algebra, a.algebra
            )
        )
    return complex(
        sum(np.trace(r @ x) for r, x in zip(phi.densities, a.blocks))
    )


def functional_from_vector(algebra, coeffs):
    """
    Per-block trace coefficients C_i of the functional f(y) = coeffs . vec(y),
    so that f(y) = sum_i Tr(C_i y_i).
    """
    return [c.T for c in algebra.vec_to_blocks(coeffs)]


def functional_norm(coeff_blocks, algebra=None):
    """
    Norm of the linear functional f(y) = sum_i Tr(C_i y_i) and an element of
    norm one attaining it.
    Args:
        coeff_blocks (list): the trace coefficient matrices C_i.
        algebra (FdAlgebra, optional): algebra of the maximizer; inferred from
            the block shapes when omitted.
    Returns:
        norm (float): sum of the trace norms of the C_i.
        maximizer (AlgElement): unitary u with f(u) = norm.
    """
    coeff_blocks = [np.asarray(c, dtype=np.complex128) for c in coeff_blocks]
    if algebra is None:
        algebra = FdAlgebra([c.shape[0] for c in coeff_blocks])
    norm = 0.0
    blocks = []
    for c in coeff_blocks:
        # c = w p with w unitary, so Tr(c w^*) = Tr(p) is the trace norm.
        w, p = scipy.linalg.polar(c)
        norm += float(np.trace(p).real)
        blocks.append(w.conj().T)
    return norm, AlgElement(algebra, blocks)


def vector_state(algebra, block=0, index=0):
    """
    The vector state a -> <a delta, delta> for the coordinate vector `index`
    of block `block`.
    """
    densities = [np.zeros((d, d)) for d in algebra.block_dims]
    densities[block][index, index] = 1.0
    return State(algebra, densities)


def maximally_mixed(algebra):
    """The normalized trace of the algebra, dim-weighted over blocks."""
    total = sum(algebra.block_dims)
    return State(algebra, [np.eye(d) / total for d in algebra.block_dims])


def random_element(algebra, rng, scale=1.0):
    """
    Complex Gaussian element.
    Args:
        rng (np.random.Generator): source of randomness.
    """
    return AlgElement(
        algebra,
        [
            scale
            * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
            / np.sqrt(2.0)
            for d in algebra.block_dims
        ],
    )


def random_unit_element(algebra, rng):
    """Random element rescaled to op_norm one."""
    x = random_element(algebra, rng)
    return x.scale(1.0 / op_norm(x))


def random_state(algebra, rng, rank=None):
    """
    Random state rho = G G^* / Tr(G G^*) per block.
    Args:
        rank (int, optional): number of columns of G in every block; full rank
            (faithful state) when omitted.
    """
    densities = []
    for d in algebra.block_dims:
        k = d if rank is None else min(rank, d)
        g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
        densities.append(g @ g.conj().T)
    total = sum(float(np.trace(r).real) for r in densities)
    return State(algebra, [r / total for r in densities])


def left_gram(phi):
    """
    Matrix G with vec(a)^H G vec(a) = phi(a^* a), and more generally
    vec(y)^H G vec(x) = phi(y^* x).
    """
    return scipy.linalg.block_diag(
        *[np.kron(np.eye(r.shape[0]), r.T) for r in phi.densities]
    )


def right_gram(phi):
    """
    Matrix G with vec(a)^H G vec(a) = phi(a a^*).
    """
    return scipy.linalg.block_diag(
        *[np.kron(r, np.eye(r.shape[0])) for r in phi.densities]
    )
