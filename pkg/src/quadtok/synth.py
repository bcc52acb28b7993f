"""Synthetic GUI-like screenshot generator.

Real benchmark screenshots are not redistributable, so tests and sweep demos
run on generated ones: flat background panels, a header bar, text-like strips
of high-contrast dashes, and icon dot grids. Everything is drawn from a
seeded numpy Generator, so a (seed, index) pair always yields the same image.
"""

from __future__ import annotations

import numpy as np

DEFAULT_CORPUS_SEED = 7
DEFAULT_CORPUS_SIZE = 50

_LIGHT = np.array([245, 246, 248], dtype=np.uint8)
_DARK = np.array([32, 36, 44], dtype=np.uint8)


def _rand_color(rng: np.random.Generator, low: int, high: int) -> np.ndarray:
    return rng.integers(low, high, size=3).astype(np.uint8)


def _text_strip(img: np.ndarray, rng: np.random.Generator, x: int, y: int, w: int, h: int) -> None:
    """Rows of short dark dashes over a light background, like rendered text."""
    img[y : y + h, x : x + w] = _rand_color(rng, 235, 256)
    line_h = int(rng.integers(6, 13))
    gap = int(rng.integers(4, 10))
    cy = y + gap
    ink = rng.integers(0, 90, size=3).astype(np.uint8)
    while cy + line_h <= y + h - 2:
        cx = x + int(rng.integers(2, 12))
        end = x + w - int(rng.integers(2, 12))
        while cx < end:
            dash = int(rng.integers(8, 40))
            dash = min(dash, end - cx)
            if dash <= 0:
                break
            img[cy : cy + line_h, cx : cx + dash] = ink
            cx += dash + int(rng.integers(4, 14))
        cy += line_h + gap


def _icon_grid(img: np.ndarray, rng: np.random.Generator, x: int, y: int, w: int, h: int) -> None:
    """Grid of small solid squares on a flat panel."""
    img[y : y + h, x : x + w] = _rand_color(rng, 220, 250)
    cell = int(rng.integers(28, 56))
    size = max(6, cell // 3)
    for gy in range(y + cell // 2, y + h - size, cell):
        for gx in range(x + cell // 2, x + w - size, cell):
            img[gy : gy + size, gx : gx + size] = _rand_color(rng, 0, 200)


def _place(rng: np.random.Generator, span: int, size: int, lo: int = 0) -> int | None:
    """Random start so [start, start+size) fits inside [lo, span), or None."""
    if size < 1 or lo + size > span:
        return None
    return int(rng.integers(lo, span - size + 1))


def synth_screenshot(
    rng: np.random.Generator,
    width: int | None = None,
    height: int | None = None,
) -> np.ndarray:
    """One synthetic app screen as an (H, W, 3) uint8 array."""
    if width is None:
        width = int(rng.integers(360, 1400))
    if height is None:
        height = int(rng.integers(500, 2200))
    img = np.empty((height, width, 3), dtype=np.uint8)
    img[:] = _LIGHT + rng.integers(-6, 7, size=3)

    # Header bar and a left side panel on larger screens.
    header_h = min(int(rng.integers(40, 90)), height // 4)
    img[:header_h] = _DARK + rng.integers(0, 20, size=3)
    if width >= 700 and rng.random() < 0.7:
        side_w = int(rng.integers(120, max(140, width // 4)))
        img[header_h:, :side_w] = _rand_color(rng, 225, 245)

    # Flat content panels with 1px borders.
    for _ in range(int(rng.integers(2, 6))):
        pw = min(int(rng.integers(width // 5, max(width // 5 + 1, width // 2))), width)
        ph = min(int(rng.integers(height // 10, max(height // 10 + 1, height // 3))), height)
        px = _place(rng, width, pw)
        py = _place(rng, height, ph, lo=header_h)
        if px is None or py is None or ph < 2:
            continue
        img[py : py + ph, px : px + pw] = _rand_color(rng, 200, 250)
        img[py, px : px + pw] = 120
        img[py + ph - 1, px : px + pw] = 120

    # Detail-rich regions: text strips and icon grids.
    for _ in range(int(rng.integers(3, 7))):
        tw = min(int(rng.integers(width // 3, max(width // 3 + 1, int(width * 0.85)))), width)
        th = min(int(rng.integers(40, max(41, height // 6))), height)
        tx = _place(rng, width, tw)
        ty = _place(rng, height, th, lo=header_h)
        if tx is not None and ty is not None:
            _text_strip(img, rng, tx, ty, tw, th)
    if rng.random() < 0.8:
        gw = min(int(rng.integers(width // 3, max(width // 3 + 1, int(width * 0.7)))), width)
        gh = min(int(rng.integers(height // 8, max(height // 8 + 1, height // 4))), height)
        gx = _place(rng, width, gw)
        gy = _place(rng, height, gh, lo=header_h)
        if gx is not None and gy is not None:
            _icon_grid(img, rng, gx, gy, gw, gh)
    return img


def synth_corpus(seed: int = DEFAULT_CORPUS_SEED, count: int = DEFAULT_CORPUS_SIZE) -> list[np.ndarray]:
    """Deterministic screenshot corpus for the given seed."""
    rng = np.random.default_rng(seed)
    return [synth_screenshot(rng) for _ in range(count)]


def scrolled_pair(
    rng: np.random.Generator,
    shift_blocks: int,
    b: int = 28,
    width: int | None = None,
    height: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """A screenshot and the same screenshot scrolled up by ``shift_blocks``.

    The second frame shows content moved up by shift_blocks * b pixels, with
    fresh content entering at the bottom, mimicking a scroll gesture.
    """
    frame1 = synth_screenshot(rng, width, height)
    h = frame1.shape[0]
    dy = shift_blocks * b
    frame2 = np.empty_like(frame1)
    frame2[: h - dy] = frame1[dy:]
    # Fresh content enters at the bottom: the top band of another screen.
    tail = synth_screenshot(rng, frame1.shape[1], None)
    frame2[h - dy :] = tail[:dy]
    return frame1, frame2
