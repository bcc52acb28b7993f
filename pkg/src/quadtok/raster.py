"""Image decoding, grayscale conversion, and exact region statistics.

Images are plain numpy arrays: RGB screenshots are (H, W, 3) uint8, grayscale
rasters are (H, W) uint8. Region sums run on integer summed-area tables so
variance values are reproducible bit-for-bit; the single float division
happens at the very end.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .validation import check_gray_image, check_positive_int, check_rect, check_rgb_image

SUPPORTED_FORMATS = ("PNG", "JPEG")


class ImageDecodeError(ValueError):
    """Raised when a byte stream cannot be decoded as a supported image."""


def load_image(path) -> np.ndarray:
    """Decode a PNG or JPEG file into an (H, W, 3) uint8 RGB array.

    Alpha channels are dropped. Unreadable paths raise OSError; corrupt or
    unsupported files raise ImageDecodeError.
    """
    data = Path(path).read_bytes()
    try:
        with Image.open(io.BytesIO(data)) as im:
            if im.format not in SUPPORTED_FORMATS:
                raise ImageDecodeError(
                    f"{path}: unsupported format {im.format!r}, expected PNG or JPEG"
                )
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except ImageDecodeError:
        raise
    except UnidentifiedImageError as exc:
        raise ImageDecodeError(f"{path}: not a decodable image ({exc})") from exc
    except (OSError, SyntaxError, ValueError) as exc:
        # PIL reports truncated or corrupt streams through these types.
        raise ImageDecodeError(f"{path}: corrupt image data ({exc})") from exc
    return arr


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """BT.601 luma, computed in integer arithmetic with round-half-up."""
    img = check_rgb_image(img)
    px = img.astype(np.uint32)
    luma = (px[..., 0] * 299 + px[..., 1] * 587 + px[..., 2] * 114 + 500) // 1000
    return luma.astype(np.uint8)


def round_to_multiple(value: int, base: int) -> int:
    """Nearest positive multiple of ``base``; ties round up, minimum ``base``."""
    n = (2 * value + base) // (2 * base)
    return base * max(1, n)


def resize_to_block_multiple(img: np.ndarray, b: int) -> np.ndarray:
    """Bilinear-resize so both dimensions are positive multiples of ``b``."""
    img = check_rgb_image(img)
    b = check_positive_int("block size", b)
    h, w = img.shape[:2]
    new_w = round_to_multiple(w, b)
    new_h = round_to_multiple(h, b)
    if (new_w, new_h) == (w, h):
        return img
    resized = Image.fromarray(img).resize((new_w, new_h), Image.BILINEAR)
    return np.asarray(resized, dtype=np.uint8)


@dataclass(frozen=True)
class SummedAreaTable:
    """Zero-padded cumulative sums of pixel values and squared values.

    ``sums[y][x]`` holds the integer total over the top-left y-by-x pixel
    rectangle, so any axis-aligned region reduces to four lookups. int64 is
    wide enough: 255^2 * W * H stays far below 2^63 for any realistic frame.
    """

    width: int
    height: int
    sums: np.ndarray
    sq_sums: np.ndarray


def build_sat(gray: np.ndarray) -> SummedAreaTable:
    """Build value and squared-value summed-area tables for a gray image."""
    gray = check_gray_image(gray)
    h, w = gray.shape
    px = gray.astype(np.int64)
    sums = np.zeros((h + 1, w + 1), dtype=np.int64)
    sq_sums = np.zeros((h + 1, w + 1), dtype=np.int64)
    sums[1:, 1:] = px.cumsum(axis=0).cumsum(axis=1)
    sq_sums[1:, 1:] = (px * px).cumsum(axis=0).cumsum(axis=1)
    return SummedAreaTable(w, h, sums, sq_sums)


def region_sums(sat: SummedAreaTable, rect) -> tuple[int, int]:
    """Exact (sum, squared sum) of pixel values inside an (x, y, w, h) rect."""
    x, y, w, h = check_rect(rect, sat.width, sat.height)
    s, q = sat.sums, sat.sq_sums
    total = int(s[y + h, x + w]) - int(s[y, x + w]) - int(s[y + h, x]) + int(s[y, x])
    sq_total = int(q[y + h, x + w]) - int(q[y, x + w]) - int(q[y + h, x]) + int(q[y, x])
    return total, sq_total


def region_variance(sat: SummedAreaTable, rect) -> float:
    """Population variance of the pixels in ``rect``.

    The numerator n*sum(x^2) - sum(x)^2 is evaluated in exact integers, so the
    result is zero iff the region is constant and can never go negative.
    """
    x, y, w, h = check_rect(rect, sat.width, sat.height)
    total, sq_total = region_sums(sat, (x, y, w, h))
    n = w * h
    numerator = n * sq_total - total * total
    if numerator <= 0:
        return 0.0
    return numerator / (n * n)


def region_max_gradient(gray: np.ndarray, rect) -> float:
    """Maximum gradient magnitude sqrt(dx^2 + dy^2) inside ``rect``.

    Forward differences within the rect; pixels on the right/bottom edge fall
    back to backward differences. Degenerate 1-pixel-wide axes contribute 0.
    """
    gray = check_gray_image(gray)
    x, y, w, h = check_rect(rect, gray.shape[1], gray.shape[0])
    sub = gray[y : y + h, x : x + w].astype(np.int64)
    if w >= 2:
        dx = np.empty_like(sub)
        dx[:, :-1] = sub[:, 1:] - sub[:, :-1]
        dx[:, -1] = sub[:, -1] - sub[:, -2]
    else:
        dx = np.zeros_like(sub)
    if h >= 2:
        dy = np.empty_like(sub)
        dy[:-1, :] = sub[1:, :] - sub[:-1, :]
        dy[-1, :] = sub[-1, :] - sub[-2, :]
    else:
        dy = np.zeros_like(sub)
    return math.sqrt(int((dx * dx + dy * dy).max()))
