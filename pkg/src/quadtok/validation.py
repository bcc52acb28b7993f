"""Input validation helpers for image arrays and numeric parameters."""

from __future__ import annotations

import numpy as np


def check_rgb_image(img) -> np.ndarray:
    """Coerce to an (H, W, 3) uint8 array or raise ValueError."""
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    return _as_uint8(arr)


def check_gray_image(gray) -> np.ndarray:
    """Coerce to an (H, W) uint8 array or raise ValueError."""
    arr = np.asarray(gray)
    if arr.ndim != 2:
        raise ValueError(f"expected an (H, W) grayscale array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    return _as_uint8(arr)


def _as_uint8(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"pixel values must be 8-bit integers, got dtype {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("pixel values must lie in [0, 255]")
    return arr.astype(np.uint8)


def check_rect(rect, width: int, height: int) -> tuple[int, int, int, int]:
    """Validate an (x, y, w, h) pixel rectangle against image bounds."""
    x, y, w, h = (int(v) for v in rect)
    if w < 1 or h < 1:
        raise ValueError(f"rectangle {rect} is empty")
    if x < 0 or y < 0 or x + w > width or y + h > height:
        raise ValueError(f"rectangle {rect} exceeds {width}x{height} image bounds")
    return x, y, w, h


def check_positive_int(name: str, value) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_positive(name: str, value) -> float:
    value = float(value)
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return value


def check_unit_fraction(name: str, value) -> float:
    """Accept a value in the half-open interval (0, 1]."""
    value = float(value)
    if not 0 < value <= 1:
        raise ValueError(f"{name} must lie in (0, 1], got {value!r}")
    return value


def check_non_negative(name: str, value) -> float:
    value = float(value)
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value!r}")
    return value
