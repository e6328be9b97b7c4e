"""Deterministic synthetic videos for tests and benchmarks."""
from __future__ import annotations

import numpy as np

from .errors import InvalidParameterError


def random_frames(count: int, height: int, width: int, channels: int = 3, seed: int = 0) -> np.ndarray:
    """Seeded uniform-noise video, (count, height, width, channels) uint8."""
    if count < 1 or height < 1 or width < 1:
        raise InvalidParameterError(f"need positive dimensions, got {count}x{height}x{width}")
    if channels not in (1, 3):
        raise InvalidParameterError(f"channels must be 1 or 3, got {channels}")
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, size=(count, height, width, channels), dtype=np.uint8)


def constant_frames(count: int, height: int, width: int, channels: int = 3, value: int = 127) -> np.ndarray:
    return np.full((count, height, width, channels), value, dtype=np.uint8)


def waving_object_frames(
    count: int = 120,
    height: int = 64,
    width: int = 64,
    channels: int = 3,
    seed: int = 7,
) -> np.ndarray:
    """A bright block sweeping back and forth over a static noise texture.

    Mimics the motion signature of a hand holding something up to a camera:
    most of the scene is static while one object oscillates with a little
    per-frame jitter. Useful wherever a motion-heavy but fully reproducible
    clip is needed.
    """
    if count < 2:
        raise InvalidParameterError(f"need at least 2 frames, got {count}")
    rng = np.random.default_rng(seed)
    background = rng.integers(40, 90, size=(height, width, channels), dtype=np.uint8)
    frames = np.empty((count, height, width, channels), dtype=np.uint8)
    block_w = max(2, width // 6)
    block_h = max(2, height // 2)
    top = (height - block_h) // 2
    travel = width - block_w
    for i in range(count):
        frame = background.copy()
        phase = 2.0 * np.pi * i / count
        center = 0.5 * (1.0 - np.cos(2.0 * phase))  # two full sweeps
        jitter = rng.integers(-1, 2)
        left = int(np.clip(round(center * travel) + jitter, 0, travel))
        frame[top : top + block_h, left : left + block_w, :] = 230
        frames[i] = frame
    return frames
