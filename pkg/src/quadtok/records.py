"""Reduction record construction, canonical JSON serialization, and parsing.

Records are byte-stable: fields serialize in a fixed order and every float is
rendered with exactly six decimal places, so identical runs produce identical
bytes. ``schema_version`` is MAJOR.MINOR; readers reject unknown majors.
"""

from __future__ import annotations

import json
from typing import Optional

from . import __version__
from .reducer import ReductionResult

SCHEMA_VERSION = "1.0"

# Canonical key order of the config echo.
CONFIG_KEYS = (
    "patch_size",
    "merge_size",
    "criterion",
    "alpha",
    "resize",
    "conditional",
    "tau_static",
    "tau_shift",
    "gamma",
    "rho_min",
    "d_max",
)

_FLOAT_CONFIG_KEYS = {"alpha", "tau_static", "tau_shift", "gamma", "rho_min"}


def build_record(
    result: ReductionResult,
    config: dict,
    frame_index: Optional[int] = None,
) -> dict:
    """Assemble the serializable record for one processed frame.

    ``leaves[i]`` is the leaf behind ``tokens[i]`` for the first
    ``kept_tokens`` token entries; the token list then continues with the
    padding duplicates of the packed grid, flagged ``pad`` and repeating the
    final token's true coordinate.
    """
    layout = result.layout
    selection = result.selection
    packed = result.packed
    report = result.report

    config_echo = {}
    for key in CONFIG_KEYS:
        value = config[key]
        config_echo[key] = float(value) if key in _FLOAT_CONFIG_KEYS else value

    record: dict = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
    }
    if frame_index is not None:
        record["frame"] = frame_index
    record["config"] = config_echo
    record["image"] = {
        "width": result.original_width,
        "height": result.original_height,
        "resized_width": result.width,
        "resized_height": result.height,
    }
    record["layout"] = {
        "b": layout.block_px,
        "d": layout.depth,
        "C": layout.chunk_px,
        "chunks": len(layout.chunks),
        "margins": len(layout.margins),
    }
    record["leaves"] = [
        {"x0": e.leaf.x0, "y0": e.leaf.y0, "w": e.leaf.w, "h": e.leaf.h}
        for e in selection.entries
    ]
    tokens = []
    n = len(selection.entries)
    for slot, entry_index in enumerate(packed.order):
        e = selection.entries[entry_index]
        tokens.append(
            {
                "x": e.coord[0],
                "y": e.coord[1],
                "patch_rows": list(e.patch_rows),
                "pad": slot >= n,
            }
        )
    record["tokens"] = tokens
    record["packed_grid"] = {"h": packed.height, "w": packed.width, "pad_count": packed.pad_count}
    modes = []
    if result.decisions is not None:
        for k, decision in enumerate(result.decisions):
            modes.append(
                {
                    "chunk_index": k,
                    "mode": decision.mode,
                    "sim_zero": decision.sim_zero,
                    "best_sim": decision.best_sim,
                    "delta": list(decision.delta) if decision.delta is not None else None,
                }
            )
    record["modes"] = modes
    record["report"] = {
        "dense_tokens": report.dense_tokens,
        "kept_tokens": report.kept_tokens,
        "compression_rate": report.compression_rate,
        "mode_counts": dict(report.mode_counts) if report.mode_counts is not None else None,
    }
    return record


def canonical_json(obj) -> str:
    """Serialize with insertion-ordered keys and %.6f floats."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, int):  # bool handled above
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(f"{obj:.6f}")
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(key)))
            parts.append(":")
            _emit(value, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, value in enumerate(obj):
            if i:
                parts.append(",")
            _emit(value, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_record(text: str) -> dict:
    """Parse a serialized record, rejecting unknown schema majors."""
    record = json.loads(text)
    if not isinstance(record, dict):
        raise ValueError("record must be a JSON object")
    declared = record.get("schema_version")
    if not isinstance(declared, str):
        raise ValueError("record lacks a schema_version string")
    major = declared.split(".", 1)[0]
    if major != SCHEMA_VERSION.split(".", 1)[0]:
        raise ValueError(
            f"unsupported record schema_version {declared!r}, this reader handles {SCHEMA_VERSION}"
        )
    return record
