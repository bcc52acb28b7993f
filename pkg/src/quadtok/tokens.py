"""Token ordering, patch-row index math, grid packing, and compression stats."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .quadtree import LeafPartition, representative
from .layout import BlockRect

# Fixed tally order keeps serialized reports byte-stable.
MODE_ORDER = ("static", "shifted", "replaced")


class TokenEntry(NamedTuple):
    """One retained merged token: its leaf, center block, and patch rows."""

    leaf: BlockRect
    coord: tuple[int, int]
    patch_rows: tuple[int, ...]
    chunk_index: int  # -1 for margin leaves


@dataclass(frozen=True)
class TokenSelection:
    """Retained tokens in raster order of their representative coordinates."""

    entries: tuple[TokenEntry, ...]
    w_blocks: int
    h_blocks: int
    merge_size: int


@dataclass(frozen=True)
class PackedGrid:
    """Near-aspect rectangular packing of the retained tokens.

    ``order`` maps each grid slot (row-major) to a selection entry index;
    padding slots repeat the final entry and only exist to fill the rectangle.
    """

    height: int
    width: int
    pad_count: int
    order: tuple[int, ...]


@dataclass(frozen=True)
class CompressionReport:
    dense_tokens: int
    kept_tokens: int
    compression_rate: float
    chunk_leaf_counts: tuple[int, ...]
    margin_tokens: int
    mode_counts: Optional[dict[str, int]] = None


def patch_rows(coord: tuple[int, int], w_blocks: int, m: int, h_blocks: Optional[int] = None) -> tuple[int, ...]:
    """Dense patch-tensor rows of the merged token at block coord (x, y).

    Merged token (x, y) owns the m*m consecutive rows starting at
    k = (y * w_blocks + x) * m**2, matching merge-block-interleaved patch
    ordering.
    """
    x, y = coord
    if x < 0 or x >= w_blocks or y < 0 or (h_blocks is not None and y >= h_blocks):
        raise ValueError(f"coordinate {coord} outside the {w_blocks}-wide dense grid")
    k = (y * w_blocks + x) * m * m
    return tuple(range(k, k + m * m))


def select_tokens(partition: LeafPartition) -> TokenSelection:
    """One representative token per leaf, sorted by (y, x) block coordinate."""
    layout = partition.layout
    m = partition.config.merge_size
    entries = []
    for chunk_index, leaves in enumerate(partition.chunk_leaves):
        for leaf in leaves:
            coord = representative(leaf)
            rows = patch_rows(coord, layout.w_blocks, m, layout.h_blocks)
            entries.append(TokenEntry(leaf, coord, rows, chunk_index))
    for leaf in partition.margin_leaves:
        coord = representative(leaf)
        rows = patch_rows(coord, layout.w_blocks, m, layout.h_blocks)
        entries.append(TokenEntry(leaf, coord, rows, -1))
    entries.sort(key=lambda e: (e.coord[1], e.coord[0]))
    return TokenSelection(tuple(entries), layout.w_blocks, layout.h_blocks, m)


def pack_grid(n_tokens: int, w_blocks: int, h_blocks: int) -> PackedGrid:
    """Pack N tokens into a rectangle near the dense grid's aspect ratio.

    The width is round(sqrt(N * w / h)) (half-up, floored at 1), which
    reproduces the dense grid exactly when N equals the dense token count.
    Padding slots duplicate the final token and always number fewer than one
    full row.
    """
    if n_tokens < 1:
        raise ValueError("cannot pack an empty token selection")
    target = math.sqrt(n_tokens * w_blocks / h_blocks)
    width = max(1, math.floor(target + 0.5))
    height = -(-n_tokens // width)
    pad = width * height - n_tokens
    order = tuple(range(n_tokens)) + (n_tokens - 1,) * pad
    return PackedGrid(height, width, pad, order)


def compression_report(
    selection: TokenSelection, decisions: Optional[Sequence] = None
) -> CompressionReport:
    """Dense vs kept token counts plus per-chunk and per-mode tallies."""
    dense = selection.w_blocks * selection.h_blocks
    kept = len(selection.entries)
    chunk_count = max((e.chunk_index for e in selection.entries), default=-1) + 1
    chunk_leaf_counts = [0] * chunk_count
    margin_tokens = 0
    for e in selection.entries:
        if e.chunk_index >= 0:
            chunk_leaf_counts[e.chunk_index] += 1
        else:
            margin_tokens += 1
    mode_counts = None
    if decisions is not None:
        mode_counts = {mode: 0 for mode in MODE_ORDER}
        for decision in decisions:
            mode_counts[decision.mode] += 1
    return CompressionReport(
        dense_tokens=dense,
        kept_tokens=kept,
        compression_rate=1.0 - kept / dense,
        chunk_leaf_counts=tuple(chunk_leaf_counts),
        margin_tokens=margin_tokens,
        mode_counts=mode_counts,
    )
