"""Nonlocal matting Laplacian from k-nearest-neighbor color/position affinities."""

from __future__ import annotations

import numpy as np
import scipy.sparse
from scipy.spatial import cKDTree

from ..image import validate_image

DEFAULT_K_LIST = (20, 10)
DEFAULT_DISTANCE_WEIGHTS = (2.0, 0.1)


def knn_features(image, distance_weight):
    """Per-pixel feature vectors (r, g, b, s*x/width, s*y/height)."""
    h, w = image.shape[:2]
    n = h * w
    y, x = np.unravel_index(np.arange(n), (h, w))
    return np.column_stack(
        [image.reshape(n, 3), distance_weight * x / w, distance_weight * y / h]
    )


def _neighbor_pairs(features, k):
    """Indices and distances of the k nearest non-self neighbors of each point."""
    n = features.shape[0]
    tree = cKDTree(features)
    dist, nbr = tree.query(features, k=k + 1, workers=1)
    self_mask = nbr == np.arange(n)[:, None]
    # With duplicated points the query may omit self; drop the farthest instead.
    missing = ~self_mask.any(axis=1)
    if missing.any():
        self_mask[missing, -1] = True
    keep = ~self_mask
    return nbr[keep].reshape(n, k), dist[keep].reshape(n, k)


def knn_laplacian(image, k_list=DEFAULT_K_LIST, distance_weights=DEFAULT_DISTANCE_WEIGHTS):
    """Build L = D - A from one or more kNN affinity graphs.

    For each (k, distance_weight) configuration, each pixel is linked to its k
    nearest neighbors in feature space; the affinity of a found pair is
    1 - dist/C with C the largest found distance (all affinities 1 when every
    distance is zero). Contributions from all configurations are summed, the
    result symmetrized as (A + A^T)/2, and D holds the row sums of A.
    """
    image = validate_image(image, channels=3)
    n = image.shape[0] * image.shape[1]
    if len(k_list) == 0:
        raise ValueError("k_list must not be empty")
    if len(k_list) != len(distance_weights):
        raise ValueError(
            f"k_list and distance_weights lengths differ: {len(k_list)} vs {len(distance_weights)}"
        )
    for k in k_list:
        if not 1 <= k < n:
            raise ValueError(f"every k must satisfy 1 <= k < {n}, got {k}")

    row_idx = np.arange(n)
    rows, cols, vals = [], [], []
    for k, weight in zip(k_list, distance_weights):
        neighbors, distances = _neighbor_pairs(knn_features(image, weight), k)
        diameter = distances.max()
        if diameter == 0.0:
            affinity = np.ones_like(distances)
        else:
            affinity = 1.0 - distances / diameter
        rows.append(np.repeat(row_idx, k))
        cols.append(neighbors.ravel())
        vals.append(affinity.ravel())

    A = scipy.sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    ).tocsr()
    A = (A + A.T) * 0.5
    degrees = np.asarray(A.sum(axis=1)).ravel()
    L = (scipy.sparse.diags(degrees) - A).tocsr()
    L.sum_duplicates()
    L.sort_indices()
    return L
