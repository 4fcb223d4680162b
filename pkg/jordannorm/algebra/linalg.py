#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""Dense complex linear algebra helpers shared by every module."""

import numpy as np
import scipy.linalg


def as_complex_matrix(data, rows=None, cols=None):
    """
    Convert `data` into a read-only complex128 matrix.
    Args:
        data (array-like): matrix entries.
        rows (int, optional): expected number of rows.
        cols (int, optional): expected number of columns.
    Returns:
        matrix (ndarray): complex matrix that can not be written to.
    """
    matrix = np.array(data, dtype=np.complex128)
    if matrix.ndim != 2:
        raise ValueError(
            "Expected a matrix, got an array with {} dims".format(matrix.ndim)
        )
    if rows is not None and matrix.shape[0] != rows:
        raise ValueError(
            "Expected {} rows, got {}".format(rows, matrix.shape[0])
        )
    if cols is not None and matrix.shape[1] != cols:
        raise ValueError(
            "Expected {} cols, got {}".format(cols, matrix.shape[1])
        )
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Matrix entries must be finite")
    matrix.setflags(write=False)
    return matrix


def spectral_norm(matrix):
    """
    Largest singular value, 0 for empty matrices.
    """
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(matrix, 2))


def hermitian_part(matrix):
    return 0.5 * (matrix + matrix.conj().T)


def psd_sqrt(matrix):
    """
    Square root of a Hermitian positive semi-definite matrix. Negative
    eigenvalues coming from round-off are clipped to zero.
    """
    w, v = np.linalg.eigh(hermitian_part(matrix))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def pinv(matrix, rcond=1e-10):
    """
    Minimal norm pseudoinverse; singular values below `rcond` times the
    largest one are treated as zero.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.size == 0:
        return np.zeros(matrix.shape[::-1], dtype=np.complex128)
    return scipy.linalg.pinv(matrix, rtol=rcond, atol=0.0)


def range_basis(matrix, rcond=1e-10):
    """
    Orthonormal basis of the column space of `matrix`.
    Returns:
        basis (ndarray): columns are orthonormal and span the range.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.size == 0:
        return np.zeros((matrix.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((matrix.shape[0], 0), dtype=np.complex128)
    keep = s > rcond * s[0]
    return u[:, keep]


def polar_unitary(matrix):
    """
    Unitary (or isometric) factor `u` of the polar decomposition
    `matrix = u p`.
    """
    u, _ = scipy.linalg.polar(np.asarray(matrix, dtype=np.complex128))
    return u


def eigh_truncated(matrix, rel_tol):
    """
    Eigendecomposition of a Hermitian matrix keeping only eigenvalues above
    `rel_tol` times the largest one.
    Returns:
        w (ndarray): kept eigenvalues, descending.
        v (ndarray): matching orthonormal eigenvectors as columns.
        min_eig (float): the smallest eigenvalue before truncation.
    """
    n = matrix.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128), 0.0
    w, v = np.linalg.eigh(hermitian_part(matrix))
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    top = max(w[0], 0.0)
    keep = w > rel_tol * top if top > 0.0 else np.zeros(n, dtype=bool)
    return w[keep], v[:, keep], float(w[-1])


def gram_schmidt_completion(first, rel_tol=1e-12):
    """
    Orthonormal basis whose first vector is `first`, completed with the
    standard coordinate vectors processed in index order.
    Args:
        first (ndarray): unit vector of length n.
    Returns:
        basis (ndarray): n x n unitary matrix, column 0 equals `first`.
    """
    n = first.shape[0]
    basis = [np.asarray(first, dtype=np.complex128)]
    for k in range(n):
        if len(basis) == n:
            break
        vec = np.zeros(n, dtype=np.complex128)
        vec[k] = 1.0
        # Two passes of modified Gram-Schmidt.
        for _ in range(2):
            for q in basis:
                vec = vec - q * np.vdot(q, vec)
        norm = np.linalg.norm(vec)
        if norm > rel_tol ** 0.5:
            basis.append(vec / norm)
    assert len(basis) == n, "Gram-Schmidt completion lost rank"
    return np.stack(basis, axis=1)


def max_abs(matrix):
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.abs(matrix).max())
