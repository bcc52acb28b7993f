"""Merged-token grid geometry: block sizing, chunk tiling, and margins.

Every quadtree operates on block coordinates, where one block is the b x b
pixel square backing a single merged visual token (b = patch_size *
merge_size). Images are decomposed into a centered region tiled by square
chunks whose side is a power of two in blocks, plus margin blocks that stay
untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .validation import check_positive_int


class BlockRect(NamedTuple):
    """Axis-aligned rectangle in block coordinates."""

    x0: int
    y0: int
    w: int
    h: int

    @property
    def x1(self) -> int:
        """Inclusive right block column."""
        return self.x0 + self.w - 1

    @property
    def y1(self) -> int:
        """Inclusive bottom block row."""
        return self.y0 + self.h - 1

    @property
    def area(self) -> int:
        return self.w * self.h

    def pixel_rect(self, b: int) -> tuple[int, int, int, int]:
        """Pixel-space (x, y, w, h) extent for block size ``b``."""
        return (self.x0 * b, self.y0 * b, self.w * b, self.h * b)

    def contains(self, other: "BlockRect") -> bool:
        return (
            self.x0 <= other.x0
            and self.y0 <= other.y0
            and other.x0 + other.w <= self.x0 + self.w
            and other.y0 + other.h <= self.y0 + self.h
        )

    def translate(self, dx: int, dy: int) -> "BlockRect":
        return BlockRect(self.x0 + dx, self.y0 + dy, self.w, self.h)


@dataclass(frozen=True)
class GridConfig:
    """Patch and merge sizes of the target visual tokenizer."""

    patch_size: int = 14
    merge_size: int = 2

    def __post_init__(self):
        check_positive_int("patch_size", self.patch_size)
        check_positive_int("merge_size", self.merge_size)

    @property
    def block_size(self) -> int:
        return self.patch_size * self.merge_size


def block_size(patch_size: int, merge_size: int) -> int:
    """Pixel side of one merged-token block."""
    check_positive_int("patch_size", patch_size)
    check_positive_int("merge_size", merge_size)
    return patch_size * merge_size


@dataclass(frozen=True)
class ChunkLayout:
    """Chunk tiling of one image: chunk rects plus 1x1-block margin leaves.

    The chunk side C = b * 2**(depth - 1) is the largest power-of-two block
    square both image dimensions support, so a full quadtree recursion down to
    single blocks is always possible inside every chunk.
    """

    width: int
    height: int
    block_px: int
    w_blocks: int
    h_blocks: int
    depth: int
    chunk_px: int
    chunk_blocks: int
    n_x: int
    n_y: int
    off_x: int
    off_y: int
    chunks: tuple[BlockRect, ...]
    margins: tuple[BlockRect, ...]


def compute_chunk_layout(width: int, height: int, b: int) -> ChunkLayout:
    """Tile the centered region of a block-aligned image with square chunks.

    Requires ``width`` and ``height`` to be positive multiples of ``b``. The
    chunk grid is centered with offsets snapped down to the block grid, and
    every block outside it becomes a 1x1 margin leaf; together they cover the
    dense block grid exactly once.
    """
    b = check_positive_int("block size", b)
    if width < b or height < b or width % b or height % b:
        raise ValueError(
            f"image dimensions {width}x{height} must be positive multiples of b={b}"
        )
    w_blocks, h_blocks = width // b, height // b
    # floor(log2(n)) on exact integers; bit_length avoids float drift at powers of two
    d_w = w_blocks.bit_length() - 1
    d_h = h_blocks.bit_length() - 1
    depth = max(1, min(d_w, d_h))
    chunk_blocks = 1 << (depth - 1)
    chunk_px = b * chunk_blocks
    n_x = width // chunk_px
    n_y = height // chunk_px
    off_x = ((width - n_x * chunk_px) // (2 * b)) * b
    off_y = ((height - n_y * chunk_px) // (2 * b)) * b
    off_xb, off_yb = off_x // b, off_y // b

    chunks = tuple(
        BlockRect(off_xb + cx * chunk_blocks, off_yb + cy * chunk_blocks, chunk_blocks, chunk_blocks)
        for cy in range(n_y)
        for cx in range(n_x)
    )
    span_x = n_x * chunk_blocks
    span_y = n_y * chunk_blocks
    margins = tuple(
        BlockRect(bx, by, 1, 1)
        for by in range(h_blocks)
        for bx in range(w_blocks)
        if not (off_xb <= bx < off_xb + span_x and off_yb <= by < off_yb + span_y)
    )
    return ChunkLayout(
        width=width,
        height=height,
        block_px=b,
        w_blocks=w_blocks,
        h_blocks=h_blocks,
        depth=depth,
        chunk_px=chunk_px,
        chunk_blocks=chunk_blocks,
        n_x=n_x,
        n_y=n_y,
        off_x=off_x,
        off_y=off_y,
        chunks=chunks,
        margins=margins,
    )
