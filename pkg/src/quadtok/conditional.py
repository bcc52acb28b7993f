"""Temporal chunk classification and cross-frame partition refinement.

Consecutive screenshots of a GUI trajectory are usually near-duplicates: a
page stays put, a menu opens, or a scroll shifts content by a few blocks.
Each chunk of the new frame is classified against the previous frame as
static, shifted, or replaced by comparing condensed per-block grayscale
signatures. Prior leaves carried over from the previous frame then refine the
current frame's independent quadtree wherever they exactly tile one of its
leaves, so fine detail survives across static or mildly shifted states.

Axis convention: a shift delta is (di, dj) where di moves along signature
rows (vertical blocks) and dj along columns (horizontal blocks).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .layout import BlockRect, ChunkLayout, GridConfig
from .quadtree import LeafPartition, SplitCriterion, partition_image
from .raster import SummedAreaTable
from .validation import check_non_negative, check_unit_fraction

STATIC = "static"
SHIFTED = "shifted"
REPLACED = "replaced"


@dataclass(frozen=True)
class ConditionalParams:
    """Heuristic thresholds for the static/shifted/replaced classifier."""

    tau_static: float = 0.97
    tau_shift: float = 0.94
    gamma: float = 0.03
    rho_min: float = 0.5
    d_max: int = 4

    def __post_init__(self):
        check_unit_fraction("tau_static", self.tau_static)
        check_unit_fraction("tau_shift", self.tau_shift)
        check_non_negative("gamma", self.gamma)
        check_unit_fraction("rho_min", self.rho_min)
        if int(self.d_max) < 0 or self.d_max != int(self.d_max):
            raise ValueError(f"d_max must be a non-negative block count, got {self.d_max!r}")


@dataclass(frozen=True)
class ModeDecision:
    """Classification of one chunk relative to the previous frame.

    ``best_sim`` is the best valid shifted similarity (None for static chunks,
    where the search never runs). ``delta`` is set only for shifted chunks.
    """

    mode: str
    sim_zero: float
    best_sim: Optional[float] = None
    delta: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class TrajectoryState:
    """Per-trajectory snapshot of the previous frame's partition and signatures."""

    width: int
    height: int
    chunk_leaves: tuple[tuple[BlockRect, ...], ...]
    signatures: tuple[np.ndarray, ...]


def compute_signature(sat: SummedAreaTable, chunk: BlockRect, b: int) -> np.ndarray:
    """Condensed chunk signature: rounded mean grayscale of every b x b block.

    Block sums come from the summed-area table; means round half-up in exact
    integer arithmetic.
    """
    x, y, w, h = chunk.pixel_rect(b)
    corners = sat.sums[y : y + h + 1 : b, x : x + w + 1 : b]
    block_sums = corners[1:, 1:] - corners[:-1, 1:] - corners[1:, :-1] + corners[:-1, :-1]
    n = b * b
    return ((2 * block_sums + n) // (2 * n)).astype(np.int16)


def similarity(sig_t: np.ndarray, sig_prev: np.ndarray) -> float:
    """Mean-absolute-difference similarity in [0, 1]; 1 means identical."""
    if sig_t.shape != sig_prev.shape:
        raise ValueError(f"signature shapes differ: {sig_t.shape} vs {sig_prev.shape}")
    h, w = sig_t.shape
    diff = int(np.abs(sig_t.astype(np.int64) - sig_prev.astype(np.int64)).sum())
    return 1.0 - diff / (255.0 * h * w)


def shifted_similarity(
    sig_t: np.ndarray, sig_prev: np.ndarray, delta: tuple[int, int]
) -> tuple[float, float]:
    """Similarity restricted to the overlap of a block-level shift.

    Cell (i, j) of the current signature is compared against cell
    (i - di, j - dj) of the previous one, over the set of positions where both
    are in bounds. Returns (similarity, overlap ratio); an empty overlap
    yields (0.0, 0.0).
    """
    if sig_t.shape != sig_prev.shape:
        raise ValueError(f"signature shapes differ: {sig_t.shape} vs {sig_prev.shape}")
    di, dj = delta
    h, w = sig_t.shape
    i0, i1 = max(0, di), min(h, h + di)
    j0, j1 = max(0, dj), min(w, w + dj)
    if i0 >= i1 or j0 >= j1:
        return 0.0, 0.0
    cur = sig_t[i0:i1, j0:j1].astype(np.int64)
    prev = sig_prev[i0 - di : i1 - di, j0 - dj : j1 - dj].astype(np.int64)
    n = (i1 - i0) * (j1 - j0)
    sim = 1.0 - int(np.abs(cur - prev).sum()) / (255.0 * n)
    return sim, n / (h * w)


def classify_mode(
    sig_t: np.ndarray, sig_prev: np.ndarray, params: ConditionalParams
) -> ModeDecision:
    """Classify a chunk as static, shifted, or replaced.

    Static wins outright when the zero-shift similarity clears tau_static.
    Otherwise all shifts with |di|, |dj| <= d_max and enough overlap compete;
    ties prefer the smallest |di| + |dj|, then row-major (di, dj) order.
    """
    sim_zero = similarity(sig_t, sig_prev)
    if sim_zero >= params.tau_static:
        return ModeDecision(STATIC, sim_zero)
    d = int(params.d_max)
    best_sim = None
    best_delta = None
    best_cost = None
    for di in range(-d, d + 1):
        for dj in range(-d, d + 1):
            sim, rho = shifted_similarity(sig_t, sig_prev, (di, dj))
            if rho < params.rho_min:
                continue
            cost = abs(di) + abs(dj)
            if best_sim is None or sim > best_sim or (sim == best_sim and cost < best_cost):
                best_sim, best_delta, best_cost = sim, (di, dj), cost
    if (
        best_sim is not None
        and best_sim >= params.tau_shift
        and best_sim >= sim_zero + params.gamma
    ):
        return ModeDecision(SHIFTED, sim_zero, best_sim, best_delta)
    return ModeDecision(REPLACED, sim_zero, best_sim)


def prior_leaves(
    decision: ModeDecision,
    prev_leaves: Sequence[BlockRect],
    chunk: BlockRect,
    b: int,
) -> list[BlockRect]:
    """Previous-frame leaves eligible for reuse in the current chunk.

    Static chunks reuse every previous leaf unchanged. Shifted chunks reuse
    only coarse leaves (max pixel side >= 2b), translated by the detected
    shift; any leaf that would leave the chunk is dropped whole so the
    power-of-two leaf shape is preserved. Replaced chunks reuse nothing.
    """
    if decision.mode == STATIC:
        return list(prev_leaves)
    if decision.mode == REPLACED:
        return []
    di, dj = decision.delta
    kept = []
    for leaf in prev_leaves:
        if max(leaf.w * b, leaf.h * b) < 2 * b:
            continue
        moved = leaf.translate(dj, di)
        if chunk.contains(moved):
            kept.append(moved)
    return kept


def refine_partition(
    independent: Sequence[BlockRect], priors: Sequence[BlockRect]
) -> list[BlockRect]:
    """Replace each independent leaf that a prior subset tiles exactly.

    A leaf is substituted by the priors fully contained in it only when their
    areas sum to the leaf's own area; anything else keeps the leaf. The output
    therefore tiles the chunk whenever the input did, and never coarsens.
    """
    if not priors:
        return list(independent)
    refined: list[BlockRect] = []
    for leaf in independent:
        inside = [p for p in priors if leaf.contains(p)]
        if inside and sum(p.area for p in inside) == leaf.area:
            refined.extend(inside)
        else:
            refined.append(leaf)
    return refined


def conditional_partition(
    gray: np.ndarray,
    sat: SummedAreaTable,
    layout: ChunkLayout,
    criterion: SplitCriterion,
    config: GridConfig,
    params: ConditionalParams,
    state: Optional[TrajectoryState] = None,
) -> tuple[LeafPartition, list[ModeDecision], TrajectoryState]:
    """Partition one frame with prior-frame refinement.

    Without usable state (first frame, or a dimension change) every chunk is
    reported replaced and the partition equals the independent one. Margins
    bypass temporal logic entirely. The returned state snapshots the refined
    partition and current signatures for the next frame.
    """
    independent = partition_image(gray, sat, layout, criterion, config)
    b = layout.block_px
    signatures = tuple(compute_signature(sat, chunk, b) for chunk in layout.chunks)
    usable = state is not None and (state.width, state.height) == (layout.width, layout.height)

    decisions: list[ModeDecision] = []
    refined_chunks: list[tuple[BlockRect, ...]] = []
    for k, chunk in enumerate(layout.chunks):
        if not usable:
            decisions.append(ModeDecision(REPLACED, 0.0))
            refined_chunks.append(independent.chunk_leaves[k])
            continue
        decision = classify_mode(signatures[k], state.signatures[k], params)
        priors = prior_leaves(decision, state.chunk_leaves[k], chunk, b)
        refined_chunks.append(tuple(refine_partition(independent.chunk_leaves[k], priors)))
        decisions.append(decision)

    partition = LeafPartition(tuple(refined_chunks), layout.margins, config, layout)
    new_state = TrajectoryState(layout.width, layout.height, partition.chunk_leaves, signatures)
    return partition, decisions, new_state
