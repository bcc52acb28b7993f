"""Partition overlay rendering for visual inspection."""

from __future__ import annotations

import numpy as np

from .reducer import ReductionResult

LEAF_COLOR = (255, 0, 0)
REP_COLOR = (0, 200, 0)
MODE_TINTS = {
    "static": (0, 170, 0),
    "shifted": (0, 80, 220),
    "replaced": (235, 60, 40),
}
TINT_WEIGHT = 0.25


def _draw_border(canvas: np.ndarray, rect: tuple[int, int, int, int], color) -> None:
    x, y, w, h = rect
    canvas[y, x : x + w] = color
    canvas[y + h - 1, x : x + w] = color
    canvas[y : y + h, x] = color
    canvas[y : y + h, x + w - 1] = color


def render_overlay(img: np.ndarray, result: ReductionResult) -> np.ndarray:
    """Draw leaf boundaries, representative blocks, and mode tints.

    ``img`` must be the processed (block-aligned) frame the result was
    computed from; the output has identical dimensions.
    """
    if img.shape[:2] != (result.height, result.width):
        raise ValueError(
            f"overlay base is {img.shape[1]}x{img.shape[0]} but the result covers "
            f"{result.width}x{result.height}"
        )
    canvas = img.copy()
    b = result.layout.block_px
    if result.decisions:
        for chunk, decision in zip(result.layout.chunks, result.decisions):
            x, y, w, h = chunk.pixel_rect(b)
            tint = np.array(MODE_TINTS[decision.mode], dtype=np.float64)
            region = canvas[y : y + h, x : x + w].astype(np.float64)
            canvas[y : y + h, x : x + w] = (
                (1 - TINT_WEIGHT) * region + TINT_WEIGHT * tint
            ).astype(np.uint8)
    for entry in result.selection.entries:
        _draw_border(canvas, entry.leaf.pixel_rect(b), LEAF_COLOR)
    inset = min(2, (b - 1) // 2)
    for entry in result.selection.entries:
        bx, by = entry.coord
        rect = (bx * b + inset, by * b + inset, b - 2 * inset, b - 2 * inset)
        _draw_border(canvas, rect, REP_COLOR)
    return canvas
