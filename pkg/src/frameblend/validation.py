"""Input validation helpers for frame arrays."""
from __future__ import annotations

import numpy as np

from .errors import EmptyInputError, InvalidParameterError, ShapeError

TAIL_POLICIES = ("keep", "drop")


def check_tail(tail: str) -> str:
    if tail not in TAIL_POLICIES:
        raise InvalidParameterError(f"tail must be one of {TAIL_POLICIES}, got {tail!r}")
    return tail


def check_subseq_len(subseq_len: int) -> int:
    subseq_len = int(subseq_len)
    if subseq_len < 1:
        raise InvalidParameterError(f"subseq_len must be >= 1, got {subseq_len}")
    return subseq_len


def check_jobs(jobs: int | None) -> int:
    if jobs is None:
        return 1
    jobs = int(jobs)
    if jobs < 1:
        raise InvalidParameterError(f"jobs must be >= 1, got {jobs}")
    return jobs


def as_frame(frame, index: int | None = None) -> np.ndarray:
    """Coerce one frame to (H, W, C) with C in {1, 3}.

    2-D inputs are treated as single-channel. The original dtype is kept;
    blending converts to float64 internally.
    """
    arr = np.asarray(frame)
    where = "" if index is None else f" at frame {index}"
    if arr.ndim == 2:
        arr = arr[:, :, np.newaxis]
    if arr.ndim != 3:
        raise ShapeError(f"expected a (H, W) or (H, W, C) frame{where}, got shape {arr.shape}")
    h, w, c = arr.shape
    if h < 1 or w < 1:
        raise ShapeError(f"frame dimensions must be positive{where}, got {h}x{w}")
    if c not in (1, 3):
        raise ShapeError(f"frames must have 1 or 3 channels{where}, got {c}")
    return arr


def as_frame_stack(frames) -> np.ndarray:
    """Coerce a whole video to a (N, H, W, C) array, validating consistency.

    Accepts an ndarray of shape (N, H, W[, C]) or any iterable of frames.
    Raises ShapeError identifying the first frame whose shape drifts.
    """
    if isinstance(frames, np.ndarray):
        if frames.ndim == 3:
            frames = frames[:, :, :, np.newaxis]
        if frames.ndim != 4:
            raise ShapeError(f"expected (N, H, W) or (N, H, W, C) array, got shape {frames.shape}")
        if frames.shape[0] == 0:
            raise EmptyInputError("empty frame stack")
        as_frame(frames[0], index=0)
        return frames
    collected = []
    shape = None
    for i, frame in enumerate(frames):
        arr = as_frame(frame, index=i)
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise ShapeError(f"frame {i} has shape {arr.shape}, expected {shape} (shape drift mid-stream)")
        collected.append(arr)
    if not collected:
        raise EmptyInputError("empty frame stream")
    return np.stack(collected)
