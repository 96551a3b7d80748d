"""Minimal matrix-free operator abstraction for the iterative solver.

The solver accepts either a scipy CSR matrix or a :class:`MatrixFreeOperator`;
the helpers below give both a uniform interface (matvec, exact diagonal,
tracked byte count).
"""

from __future__ import annotations

import numpy as np
import scipy.sparse


class MatrixFreeOperator:
    """A symmetric linear map given by a matvec callback plus its exact diagonal."""

    def __init__(self, n, matvec, diagonal, nbytes=0):
        self.n = n
        self.shape = (n, n)
        self._matvec = matvec
        self.diagonal = np.asarray(diagonal, dtype=np.float64)
        if self.diagonal.shape != (n,):
            raise ValueError(f"diagonal must have shape ({n},), got {self.diagonal.shape}")
        self.nbytes = int(nbytes) + self.diagonal.nbytes

    def apply(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"operand must have shape ({self.n},), got {x.shape}")
        return self._matvec(x)

    def __matmul__(self, x):
        return self.apply(x)


def matvec_of(A):
    """Return a vector->vector callable for a CSR matrix or MatrixFreeOperator."""
    if isinstance(A, MatrixFreeOperator):
        return A.apply
    if scipy.sparse.issparse(A):
        return lambda x: A @ x
    raise TypeError(f"expected a sparse matrix or MatrixFreeOperator, got {type(A).__name__}")


def diagonal_of(A):
    """Exact diagonal of a CSR matrix or MatrixFreeOperator."""
    if isinstance(A, MatrixFreeOperator):
        return A.diagonal
    if scipy.sparse.issparse(A):
        return np.asarray(A.diagonal(), dtype=np.float64)
    raise TypeError(f"expected a sparse matrix or MatrixFreeOperator, got {type(A).__name__}")


def dimension_of(A):
    n, m = A.shape
    if n != m:
        raise ValueError(f"operator must be square, got shape {A.shape}")
    return n


def bytes_of(A):
    """Tracked storage footprint in bytes (explicit accounting, not RSS)."""
    if isinstance(A, MatrixFreeOperator):
        return A.nbytes
    if scipy.sparse.issparse(A):
        return int(A.data.nbytes + A.indices.nbytes + A.indptr.nbytes)
    return int(getattr(A, "nbytes", 0))
