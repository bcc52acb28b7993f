"""Adaptive quadtree visual-token reduction for GUI screenshots."""

__version__ = "0.1.0"

from .conditional import (
    ConditionalParams,
    ModeDecision,
    TrajectoryState,
    classify_mode,
    compute_signature,
    conditional_partition,
    prior_leaves,
    refine_partition,
    shifted_similarity,
    similarity,
)
from .layout import BlockRect, ChunkLayout, GridConfig, block_size, compute_chunk_layout
from .quadtree import (
    LeafPartition,
    SplitCriterion,
    build_chunk_quadtree,
    node_score,
    partition_image,
    representative,
    should_split,
)
from .raster import (
    ImageDecodeError,
    SummedAreaTable,
    build_sat,
    load_image,
    region_max_gradient,
    region_sums,
    region_variance,
    resize_to_block_multiple,
    to_grayscale,
)
from .reducer import QuadtreeTokenReducer, ReductionResult
from .tokens import (
    CompressionReport,
    PackedGrid,
    TokenEntry,
    TokenSelection,
    compression_report,
    pack_grid,
    patch_rows,
    select_tokens,
)

__all__ = [
    "__version__",
    "BlockRect",
    "ChunkLayout",
    "CompressionReport",
    "ConditionalParams",
    "GridConfig",
    "ImageDecodeError",
    "LeafPartition",
    "ModeDecision",
    "PackedGrid",
    "QuadtreeTokenReducer",
    "ReductionResult",
    "SplitCriterion",
    "SummedAreaTable",
    "TokenEntry",
    "TokenSelection",
    "TrajectoryState",
    "block_size",
    "build_chunk_quadtree",
    "build_sat",
    "classify_mode",
    "compression_report",
    "compute_chunk_layout",
    "compute_signature",
    "conditional_partition",
    "load_image",
    "node_score",
    "pack_grid",
    "partition_image",
    "patch_rows",
    "prior_leaves",
    "refine_partition",
    "region_max_gradient",
    "region_sums",
    "region_variance",
    "representative",
    "resize_to_block_multiple",
    "select_tokens",
    "shifted_similarity",
    "should_split",
    "similarity",
    "to_grayscale",
]
