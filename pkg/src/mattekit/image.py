"""Image and trimap handling: PNG I/O, resizing, splitting, compositing.

Conventions used throughout the package:

* An image is a C-contiguous ``float64`` array of shape ``(height, width,
  channels)`` with channels 1 (gray), 3 (RGB) or 4 (RGBA) and values in
  ``[0, 1]``.
* A trimap or alpha matte is a ``float64`` array of shape ``(height, width)``
  with values in ``[0, 1]``.

All functions are pure; arrays are never modified in place.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

# Trimap classification thresholds. Values >= FG_THRESHOLD are foreground,
# values <= BG_THRESHOLD are background, everything in between is unknown.
FG_THRESHOLD = 0.9
BG_THRESHOLD = 0.1

LUMINANCE_WEIGHTS = np.array([0.299, 0.587, 0.114])


class ImageDecodeError(ValueError):
    """The file exists but could not be decoded as an image."""


class UnsupportedBitDepthError(ValueError):
    """The image uses a sample format other than 8 or 16 bits."""


@dataclass(frozen=True)
class TrimapMasks:
    """Boolean pixel classifications derived from a trimap.

    All arrays are flat (length ``height * width``, row-major).
    """

    is_fg: np.ndarray
    is_bg: np.ndarray
    is_known: np.ndarray
    is_unknown: np.ndarray


def validate_image(image, channels=None, name="image"):
    """Check the image array contract; raises ValueError on violation."""
    image = np.asarray(image)
    if image.ndim != 3:
        raise ValueError(f"{name} must have shape (height, width, channels), got {image.shape}")
    if image.shape[2] not in (1, 3, 4):
        raise ValueError(f"{name} must have 1, 3 or 4 channels, got {image.shape[2]}")
    if channels is not None and image.shape[2] != channels:
        raise ValueError(f"{name} must have {channels} channels, got {image.shape[2]}")
    if image.size and (image.min() < 0.0 or image.max() > 1.0):
        raise ValueError(f"{name} values must lie in [0, 1]")
    return np.ascontiguousarray(image, dtype=np.float64)


def validate_plane(values, name="trimap"):
    """Check a single-plane array (trimap or alpha matte) contract."""
    values = np.asarray(values)
    if values.ndim != 2:
        raise ValueError(f"{name} must have shape (height, width), got {values.shape}")
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise ValueError(f"{name} values must lie in [0, 1]")
    return np.ascontiguousarray(values, dtype=np.float64)


def load_image(path, mode="RGB"):
    """Load a PNG as a float64 array in [0, 1].

    mode "RGB" yields shape (h, w, 3); mode "GRAY" yields (h, w, 1), where
    color sources are reduced with the luminance weights 0.299/0.587/0.114.
    8-bit samples map to value/255, 16-bit samples to value/65535.
    """
    if mode not in ("RGB", "GRAY"):
        raise ValueError(f"mode must be 'RGB' or 'GRAY', got {mode!r}")
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise FileNotFoundError(f"no such image file: {path}")
    raw = cv2.imread(path, cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise ImageDecodeError(f"could not decode image data in {path}")
    if raw.dtype == np.uint8:
        scale = 255.0
    elif raw.dtype == np.uint16:
        scale = 65535.0
    else:
        raise UnsupportedBitDepthError(
            f"unsupported sample format {raw.dtype} in {path}; only 8- and 16-bit supported"
        )
    data = raw.astype(np.float64) / scale
    if data.ndim == 2:
        data = data[:, :, None]
    elif data.shape[2] >= 3:
        # OpenCV decodes color as BGR(A); drop alpha and restore RGB order.
        data = data[:, :, 2::-1]
    if mode == "GRAY":
        if data.shape[2] == 1:
            gray = data[:, :, 0]
        else:
            gray = data @ LUMINANCE_WEIGHTS
        return np.ascontiguousarray(gray[:, :, None])
    if data.shape[2] == 1:
        data = np.repeat(data, 3, axis=2)
    return np.ascontiguousarray(data)


def save_image(path, image):
    """Write an image as an 8-bit PNG; values are mapped by round(v * 255)."""
    image = validate_image(image)
    quantized = np.floor(image * 255.0 + 0.5).astype(np.uint8)
    if quantized.shape[2] == 1:
        encoded = quantized[:, :, 0]
    elif quantized.shape[2] == 3:
        encoded = quantized[:, :, ::-1]
    else:
        encoded = quantized[:, :, [2, 1, 0, 3]]
    path = os.fspath(path)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    if not cv2.imwrite(path, encoded):
        raise OSError(f"could not write image to {path}")


def _axis_coords(n_dst, n_src):
    # Half-pixel convention: src = (dst + 0.5) * scale - 0.5, edge clamped.
    scale = n_src / n_dst
    src = (np.arange(n_dst) + 0.5) * scale - 0.5
    i0 = np.floor(src).astype(np.intp)
    frac = src - i0
    lo = np.clip(i0, 0, n_src - 1)
    hi = np.clip(i0 + 1, 0, n_src - 1)
    return lo, hi, frac


def resize_bilinear(image, new_width, new_height):
    """Resize with bilinear interpolation (half-pixel sampling, edge clamp).

    Accepts (h, w, c) images as well as (h, w) planes and preserves the
    input's rank.
    """
    if new_width < 1 or new_height < 1:
        raise ValueError("resize dimensions must be >= 1")
    image = np.asarray(image, dtype=np.float64)
    plane = image.ndim == 2
    if plane:
        image = image[:, :, None]
    h, w = image.shape[:2]
    ylo, yhi, fy = _axis_coords(new_height, h)
    xlo, xhi, fx = _axis_coords(new_width, w)
    fy = fy[:, None, None]
    fx = fx[None, :, None]
    ylo, yhi = ylo[:, None], yhi[:, None]
    top = image[ylo, xlo] * (1 - fx) + image[ylo, xhi] * fx
    bottom = image[yhi, xlo] * (1 - fx) + image[yhi, xhi] * fx
    out = top * (1 - fy) + bottom * fy
    return out[:, :, 0] if plane else out


def stack_images(foreground, alpha):
    """Pair a 3-channel foreground with an alpha matte into a straight RGBA image."""
    foreground = validate_image(foreground, channels=3, name="foreground")
    alpha = validate_plane(alpha, name="alpha")
    if foreground.shape[:2] != alpha.shape:
        raise ValueError(
            f"foreground {foreground.shape[:2]} and alpha {alpha.shape} dimensions differ"
        )
    return np.concatenate([foreground, alpha[:, :, None]], axis=2)


def trimap_split(trimap):
    """Classify trimap pixels into foreground / background / unknown masks."""
    trimap = validate_plane(trimap)
    flat = trimap.ravel()
    is_fg = flat >= FG_THRESHOLD
    is_bg = flat <= BG_THRESHOLD
    is_known = is_fg | is_bg
    return TrimapMasks(is_fg=is_fg, is_bg=is_bg, is_known=is_known, is_unknown=~is_known)
