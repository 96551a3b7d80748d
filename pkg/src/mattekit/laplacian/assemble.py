"""Sparse assembly shared by the explicit Laplacian builders."""

from __future__ import annotations

import numpy as np
import scipy.sparse
import scipy.io


def assemble_symmetric_csr(rows, cols, vals, n):
    """Merge COO triplet batches into a canonical CSR matrix.

    Duplicate entries are summed; column indices end up sorted within each
    row. Accepts lists of arrays (one per batch) or plain arrays.
    """
    rows = np.concatenate([np.asarray(r).ravel() for r in rows]) if isinstance(rows, list) else np.asarray(rows)
    cols = np.concatenate([np.asarray(c).ravel() for c in cols]) if isinstance(cols, list) else np.asarray(cols)
    vals = np.concatenate([np.asarray(v).ravel() for v in vals]) if isinstance(vals, list) else np.asarray(vals)
    index_dtype = np.int32 if n < np.iinfo(np.int32).max else np.int64
    matrix = scipy.sparse.coo_matrix(
        (vals, (rows.astype(index_dtype), cols.astype(index_dtype))), shape=(n, n)
    ).tocsr()
    matrix.sum_duplicates()
    matrix.sort_indices()
    return matrix


def save_matrix_market(path, matrix):
    """Debug dump of a sparse matrix to Matrix Market text format."""
    scipy.io.mmwrite(str(path), matrix)
