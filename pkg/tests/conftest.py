"""Shared fixtures and seeded content generators."""

from __future__ import annotations

import numpy as np
import pytest

from quadtok.synth import DEFAULT_CORPUS_SEED, synth_corpus


def solid(width: int, height: int, value=200) -> np.ndarray:
    img = np.empty((height, width, 3), dtype=np.uint8)
    img[:] = value
    return img


def noise(rng: np.random.Generator, width: int, height: int) -> np.ndarray:
    return rng.integers(0, 256, size=(height, width, 3), dtype=np.int64).astype(np.uint8)


def panels(rng: np.random.Generator, width: int, height: int) -> np.ndarray:
    """Solid background with a handful of solid rectangles."""
    img = solid(width, height, int(rng.integers(0, 256)))
    for _ in range(int(rng.integers(1, 7))):
        pw = int(rng.integers(1, width + 1))
        ph = int(rng.integers(1, height + 1))
        px = int(rng.integers(0, width - pw + 1))
        py = int(rng.integers(0, height - ph + 1))
        img[py : py + ph, px : px + pw] = rng.integers(0, 256, size=3).astype(np.uint8)
    return img


def mixed(rng: np.random.Generator, width: int, height: int) -> np.ndarray:
    """Panels plus one noisy rectangle, like a busy widget on a flat page."""
    img = panels(rng, width, height)
    nw = int(rng.integers(1, width + 1))
    nh = int(rng.integers(1, height + 1))
    nx = int(rng.integers(0, width - nw + 1))
    ny = int(rng.integers(0, height - nh + 1))
    img[ny : ny + nh, nx : nx + nw] = rng.integers(0, 256, size=(nh, nw, 3)).astype(np.uint8)
    return img


def random_content_image(
    rng: np.random.Generator, min_px: int = 28, max_px: int = 2408
) -> np.ndarray:
    kind = rng.integers(0, 4)
    width = int(rng.integers(min_px, max_px + 1))
    height = int(rng.integers(min_px, max_px + 1))
    if kind == 0:
        return solid(width, height, int(rng.integers(0, 256)))
    if kind == 1:
        return noise(rng, width, height)
    if kind == 2:
        return panels(rng, width, height)
    return mixed(rng, width, height)


@pytest.fixture(scope="session")
def gui_corpus():
    """The bundled deterministic 50-image synthetic GUI corpus."""
    return synth_corpus(seed=DEFAULT_CORPUS_SEED, count=50)
