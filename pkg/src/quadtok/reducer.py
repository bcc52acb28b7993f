"""Scikit-learn style front end for the screenshot token-reduction pipeline.

``QuadtreeTokenReducer`` is a stateless transformer: ``transform`` accepts a
single RGB screenshot array or an ordered sequence of frames (a trajectory)
and returns rich ``ReductionResult`` objects carrying the partition, token
selection, packed grid, and compression statistics. Sequences are processed
in order with cross-frame conditional refinement unless disabled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .conditional import ConditionalParams, ModeDecision, conditional_partition
from .layout import ChunkLayout, GridConfig, compute_chunk_layout
from .quadtree import LeafPartition, SplitCriterion
from .raster import build_sat, resize_to_block_multiple, to_grayscale
from .tokens import (
    CompressionReport,
    PackedGrid,
    TokenSelection,
    compression_report,
    pack_grid,
    select_tokens,
)
from .validation import check_rgb_image


@dataclass(frozen=True)
class ReductionResult:
    """Everything produced for one frame."""

    original_width: int
    original_height: int
    width: int
    height: int
    layout: ChunkLayout
    partition: LeafPartition
    selection: TokenSelection
    packed: PackedGrid
    report: CompressionReport
    decisions: Optional[list[ModeDecision]] = None


class QuadtreeTokenReducer(BaseEstimator, TransformerMixin):
    """Training-free visual-token reducer for GUI screenshots.

    Builds an adaptive quadtree over each screenshot's merged-token grid and
    keeps one representative token per leaf. Homogeneous regions collapse to
    coarse leaves while detailed regions stay fine, so the retained token set
    adapts to the screenshot's information density.

    Parameters
    ----------
    patch_size : int, default=14
        ViT patch side in pixels.
    merge_size : int, default=2
        Merged-token side in patches; one token covers a
        (patch_size * merge_size)^2 pixel block.
    criterion : {"variance", "gradient"}, default="variance"
        Node split score: area-weighted grayscale variance (threshold
        1000 * alpha) or max gradient magnitude (threshold alpha).
    alpha : float, default=8.0
        Split threshold knob; larger alpha means coarser leaves and more
        compression.
    resize : bool, default=True
        Bilinear-resize inputs to the nearest block multiple. When False,
        inputs must already be block-aligned.
    conditional : bool, default=True
        Refine trajectory frames using the previous frame's partition.
    tau_static, tau_shift, gamma, rho_min, d_max
        Thresholds of the static/shifted/replaced chunk classifier.
    """

    def __init__(
        self,
        patch_size: int = 14,
        merge_size: int = 2,
        criterion: str = "variance",
        alpha: float = 8.0,
        resize: bool = True,
        conditional: bool = True,
        tau_static: float = 0.97,
        tau_shift: float = 0.94,
        gamma: float = 0.03,
        rho_min: float = 0.5,
        d_max: int = 4,
    ):
        self.patch_size = patch_size
        self.merge_size = merge_size
        self.criterion = criterion
        self.alpha = alpha
        self.resize = resize
        self.conditional = conditional
        self.tau_static = tau_static
        self.tau_shift = tau_shift
        self.gamma = gamma
        self.rho_min = rho_min
        self.d_max = d_max

    # The transformer learns nothing; fit only validates parameters.
    def fit(self, X=None, y=None):
        self._build_settings()
        return self

    def transform(self, X):
        """Reduce one screenshot or an ordered trajectory of screenshots.

        A single (H, W, 3) array yields one ReductionResult; any other
        iterable is treated as an ordered frame sequence and yields a list,
        refined across frames when ``conditional`` is on.
        """
        if isinstance(X, np.ndarray) and X.ndim == 3:
            return self.transform_frames([X], conditional=False, track_modes=False)[0]
        frames = list(X)
        if not frames:
            raise ValueError("transform needs at least one frame")
        return self.transform_frames(frames, conditional=self.conditional)

    def transform_frames(
        self,
        frames: Sequence[np.ndarray],
        conditional: Optional[bool] = None,
        track_modes: bool = True,
    ) -> list[ReductionResult]:
        """Process frames in order, threading conditional state between them.

        With ``conditional=False`` no state is threaded, so every frame is
        partitioned independently and (when modes are tracked) every chunk
        reports replaced.
        """
        config, criterion, params = self._build_settings()
        if conditional is None:
            conditional = self.conditional
        b = config.block_size
        state = None
        results = []
        for frame in frames:
            img = check_rgb_image(frame)
            orig_h, orig_w = img.shape[:2]
            if self.resize:
                img = resize_to_block_multiple(img, b)
            elif orig_w % b or orig_h % b or orig_w < b or orig_h < b:
                raise ValueError(
                    f"resize is off but {orig_w}x{orig_h} is not a positive multiple of b={b}"
                )
            h, w = img.shape[:2]
            gray = to_grayscale(img)
            sat = build_sat(gray)
            layout = compute_chunk_layout(w, h, b)
            partition, decisions, new_state = conditional_partition(
                gray, sat, layout, criterion, config, params, state if conditional else None
            )
            if conditional:
                state = new_state
            if not track_modes:
                decisions = None
            selection = select_tokens(partition)
            packed = pack_grid(len(selection.entries), layout.w_blocks, layout.h_blocks)
            report = compression_report(selection, decisions)
            results.append(
                ReductionResult(
                    original_width=orig_w,
                    original_height=orig_h,
                    width=w,
                    height=h,
                    layout=layout,
                    partition=partition,
                    selection=selection,
                    packed=packed,
                    report=report,
                    decisions=decisions,
                )
            )
        return results

    def _build_settings(self) -> tuple[GridConfig, SplitCriterion, ConditionalParams]:
        config = GridConfig(self.patch_size, self.merge_size)
        criterion = SplitCriterion(self.criterion, float(self.alpha))
        params = ConditionalParams(
            tau_static=self.tau_static,
            tau_shift=self.tau_shift,
            gamma=self.gamma,
            rho_min=self.rho_min,
            d_max=self.d_max,
        )
        return config, criterion, params
