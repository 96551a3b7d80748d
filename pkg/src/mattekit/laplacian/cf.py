"""Closed-form matting Laplacian from local color-line smoothness."""

from __future__ import annotations

import numpy as np

from ..image import validate_image
from .assemble import assemble_symmetric_csr
from .windows import inv3x3, sliding_window_indices, window_color_stats

_CHUNK = 4096  # windows per assembly batch, bounds peak memory


def cf_laplacian(image, eps=1e-7, radius=1):
    """Build the closed-form matting Laplacian as a sparse CSR matrix.

    For every full (2r+1)x(2r+1) window k with mean color mu_k and color
    covariance cov_k, the window contributes

        delta_ij - (1/m) * (1 + (I_i - mu_k)^T (cov_k + eps/m * Id)^-1 (I_j - mu_k))

    to entry (i, j), where m is the window pixel count. Entries over all
    windows are accumulated into one symmetric positive semi-definite matrix.
    """
    image = validate_image(image, channels=3)
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    h, w = image.shape[:2]
    n = h * w
    win_idx = sliding_window_indices(h, w, radius)
    m = win_idx.shape[1]
    flat = image.reshape(n, 3)
    eye_m = np.eye(m)
    reg = (eps / m) * np.eye(3)

    rows, cols, vals = [], [], []
    for start in range(0, win_idx.shape[0], _CHUNK):
        idx = win_idx[start : start + _CHUNK]
        colors = flat[idx]  # (k, m, 3)
        stats = window_color_stats(colors)
        centered = colors - stats.mean[:, None, :]
        inv = inv3x3(stats.cov + reg)
        quad = np.einsum("kmi,kij,knj->kmn", centered, inv, centered, optimize=True)
        block = eye_m - (1.0 + quad) / m
        rows.append(np.repeat(idx, m, axis=1).ravel())
        cols.append(np.tile(idx, (1, m)).ravel())
        vals.append(block.ravel())

    return assemble_symmetric_csr(rows, cols, vals, n)
