"""Shared helpers for window-based Laplacian builders.

Covers sliding full-window enumeration, per-window color statistics, batched
3x3 inversion via the adjugate, and O(n) moving-sum box filters (cost
independent of the window radius).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


@dataclass(frozen=True)
class WindowStats:
    """First and second moments of the colors inside each full window."""

    mean: np.ndarray  # (n_windows, 3)
    cov: np.ndarray  # (n_windows, 3, 3), population covariance
    size: int  # pixels per window


def sliding_window_indices(height, width, radius):
    """Flat pixel indices of every full (2r+1)x(2r+1) window, one row per window."""
    win = 2 * radius + 1
    if height < win or width < win:
        raise ValueError(
            f"image {height}x{width} is smaller than one {win}x{win} window"
        )
    grid = np.arange(height * width, dtype=np.int64).reshape(height, width)
    view = sliding_window_view(grid, (win, win))
    return view.reshape(-1, win * win)


def window_color_stats(colors):
    """Moments of per-window colors given as an (n_windows, m, 3) array."""
    m = colors.shape[1]
    mean = colors.mean(axis=1)
    centered = colors - mean[:, None, :]
    cov = np.einsum("kmi,kmj->kij", centered, centered) / m
    return WindowStats(mean=mean, cov=cov, size=m)


def inv3x3(M):
    """Batched closed-form (adjugate) inverse of (..., 3, 3) matrices."""
    a, b, c = M[..., 0, 0], M[..., 0, 1], M[..., 0, 2]
    d, e, f = M[..., 1, 0], M[..., 1, 1], M[..., 1, 2]
    g, h, i = M[..., 2, 0], M[..., 2, 1], M[..., 2, 2]
    det = a * (e * i - f * h) + b * (f * g - d * i) + c * (d * h - e * g)
    inv = np.empty_like(M)
    inv[..., 0, 0] = e * i - f * h
    inv[..., 0, 1] = c * h - b * i
    inv[..., 0, 2] = b * f - c * e
    inv[..., 1, 0] = f * g - d * i
    inv[..., 1, 1] = a * i - c * g
    inv[..., 1, 2] = c * d - a * f
    inv[..., 2, 0] = d * h - e * g
    inv[..., 2, 1] = b * g - a * h
    inv[..., 2, 2] = a * e - b * d
    inv /= det[..., None, None]
    return inv


def _moving_sum(x, win, axis):
    n = x.shape[axis]
    pad_shape = list(x.shape)
    pad_shape[axis] = 1
    csum = np.concatenate(
        [np.zeros(pad_shape, dtype=np.float64), np.cumsum(x, axis=axis, dtype=np.float64)],
        axis=axis,
    )
    upper = csum.take(np.arange(win, n + 1), axis=axis)
    lower = csum.take(np.arange(0, n - win + 1), axis=axis)
    return upper - lower


def box_sum_valid(x, radius):
    """Sum of x over every full window; (h, w, ...) -> (h-2r, w-2r, ...)."""
    win = 2 * radius + 1
    return _moving_sum(_moving_sum(np.asarray(x, dtype=np.float64), win, 0), win, 1)


def scatter_center_sums(centers, radius, shape):
    """For each pixel, sum a per-window-center field over the windows containing it.

    ``centers`` has shape (h-2r, w-2r, ...); the result has shape (h, w, ...).
    Adjoint of :func:`box_sum_valid` (window sums with zero padding outside the
    valid center region).
    """
    h, w = shape
    centers = np.asarray(centers, dtype=np.float64)
    padded = np.zeros((h + 2 * radius, w + 2 * radius) + centers.shape[2:])
    padded[2 * radius : h, 2 * radius : w] = centers
    return box_sum_valid(padded, radius)
