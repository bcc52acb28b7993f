"""Adaptive quadtree partitioning and representative token selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .layout import BlockRect, ChunkLayout, GridConfig
from .raster import SummedAreaTable, region_max_gradient, region_variance
from .validation import check_positive

VARIANCE = "variance"
GRADIENT = "gradient"

# Variance scores compare against 1000 * alpha; gradient scores against alpha
# directly, since max-gradient values already live on the raw grayscale scale.
VARIANCE_THRESHOLD_SCALE = 1000.0


@dataclass(frozen=True)
class SplitCriterion:
    """Node scoring rule: area-weighted variance or max gradient magnitude."""

    kind: str = VARIANCE
    alpha: float = 8.0

    def __post_init__(self):
        if self.kind not in (VARIANCE, GRADIENT):
            raise ValueError(f"criterion must be {VARIANCE!r} or {GRADIENT!r}, got {self.kind!r}")
        check_positive("alpha", self.alpha)

    @property
    def threshold(self) -> float:
        if self.kind == VARIANCE:
            return VARIANCE_THRESHOLD_SCALE * self.alpha
        return self.alpha


def node_score(
    criterion: SplitCriterion,
    gray: np.ndarray,
    sat: SummedAreaTable,
    node: BlockRect,
    b: int,
) -> float:
    """Split score of one quadtree node over its pixel extent."""
    rect = node.pixel_rect(b)
    if criterion.kind == VARIANCE:
        return rect[2] * rect[3] * region_variance(sat, rect)
    return region_max_gradient(gray, rect)


def should_split(criterion: SplitCriterion, score: float, node: BlockRect) -> bool:
    """Whether a node subdivides: strictly above threshold and larger than one block."""
    if node.w <= 1 and node.h <= 1:
        return False
    return score > criterion.threshold


def build_chunk_quadtree(
    chunk: BlockRect,
    criterion: SplitCriterion,
    gray: np.ndarray,
    sat: SummedAreaTable,
    b: int,
) -> list[BlockRect]:
    """Depth-first quadtree over one square power-of-two chunk.

    Quadrants recurse in a fixed (top-left, top-right, bottom-left,
    bottom-right) order so the emitted leaf list is deterministic. The
    returned leaves tile the chunk exactly.
    """
    if chunk.w != chunk.h or chunk.w & (chunk.w - 1):
        raise ValueError(f"chunk {chunk} must be square with a power-of-two side")
    leaves: list[BlockRect] = []

    def visit(node: BlockRect) -> None:
        score = node_score(criterion, gray, sat, node, b)
        if not should_split(criterion, score, node):
            leaves.append(node)
            return
        half = node.w // 2
        visit(BlockRect(node.x0, node.y0, half, half))
        visit(BlockRect(node.x0 + half, node.y0, half, half))
        visit(BlockRect(node.x0, node.y0 + half, half, half))
        visit(BlockRect(node.x0 + half, node.y0 + half, half, half))

    visit(chunk)
    return leaves


@dataclass(frozen=True)
class LeafPartition:
    """Quadtree leaves per chunk plus the always-kept margin leaves."""

    chunk_leaves: tuple[tuple[BlockRect, ...], ...]
    margin_leaves: tuple[BlockRect, ...]
    config: GridConfig
    layout: ChunkLayout

    def all_leaves(self) -> Iterator[BlockRect]:
        for leaves in self.chunk_leaves:
            yield from leaves
        yield from self.margin_leaves

    @property
    def leaf_count(self) -> int:
        return sum(len(leaves) for leaves in self.chunk_leaves) + len(self.margin_leaves)


def partition_image(
    gray: np.ndarray,
    sat: SummedAreaTable,
    layout: ChunkLayout,
    criterion: SplitCriterion,
    config: GridConfig,
) -> LeafPartition:
    """Run an independent quadtree in every chunk; margins stay 1x1 leaves."""
    if (layout.width, layout.height) != (sat.width, sat.height):
        raise ValueError(
            f"layout is for {layout.width}x{layout.height} but image is {sat.width}x{sat.height}"
        )
    b = layout.block_px
    chunk_leaves = tuple(
        tuple(build_chunk_quadtree(chunk, criterion, gray, sat, b)) for chunk in layout.chunks
    )
    return LeafPartition(chunk_leaves, layout.margins, config, layout)


def representative(leaf: BlockRect) -> tuple[int, int]:
    """Center block of a leaf: (floor((x0+x1)/2), floor((y0+y1)/2))."""
    return (leaf.x0 + (leaf.w - 1) // 2, leaf.y0 + (leaf.h - 1) // 2)
