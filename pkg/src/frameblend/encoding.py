"""Core video encoding: partition a frame sequence into consecutive
sub-sequences and blend each one into a single image by a normalized
weighted sum.

All arithmetic runs in float64 regardless of the input dtype; outputs stay
unquantized floats until export. Every operation here is a pure function of
its inputs, so sub-sequences may be processed concurrently with results
identical to sequential execution.
"""
from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInputError, InvalidParameterError, ShapeError
from .validation import as_frame, as_frame_stack, check_jobs, check_subseq_len, check_tail
from .weights import WeightVector, make_weights, normalize_weights


@dataclass(frozen=True)
class EncodedImage:
    """One blended image plus the provenance needed to trace it back.

    ``values`` is (H, W, C) float64 and, as a convex combination of the
    source frames, stays inside their per-pixel [min, max] envelope.
    ``start``/``end`` delimit the source frame range (end exclusive);
    ``subseq_len`` is the nominal segment length the encoder was configured
    with, which the final segment may undercut.
    """

    values: np.ndarray
    start: int
    end: int
    weight_kind: str
    subseq_len: int

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def channels(self) -> int:
        return self.values.shape[2]

    def to_uint8(self) -> np.ndarray:
        return quantize_to_uint8(self.values)


def quantize_to_uint8(values: np.ndarray) -> np.ndarray:
    """8-bit export rule: round half to even, clamp to [0, 255]."""
    return np.clip(np.rint(values), 0, 255).astype(np.uint8)


def partition_segments(frame_count: int, subseq_len: int, tail: str = "keep") -> list[tuple[int, int]]:
    """Split ``frame_count`` frames into consecutive, non-overlapping
    segments of ``subseq_len`` frames.

    With ``tail="keep"`` the segments cover every frame and the last one may
    be shorter; with ``tail="drop"`` a short final segment is omitted.
    Returns (start_index, length) pairs in order.
    """
    frame_count = int(frame_count)
    if frame_count < 0:
        raise InvalidParameterError(f"frame_count must be >= 0, got {frame_count}")
    if frame_count == 0:
        raise EmptyInputError("cannot partition zero frames")
    subseq_len = check_subseq_len(subseq_len)
    tail = check_tail(tail)
    segments = []
    for start in range(0, frame_count, subseq_len):
        length = min(subseq_len, frame_count - start)
        if length < subseq_len and tail == "drop":
            break
        segments.append((start, length))
    return segments


def blend_frames(
    frames,
    weights: WeightVector | np.ndarray,
    start: int = 0,
    subseq_len: int | None = None,
) -> EncodedImage:
    """Collapse a stack of frames into one image by a normalized weighted sum.

    ``weights`` may be longer than the stack (the tail segment of a video):
    the leading weights are taken and renormalized so the result stays a
    convex combination. A stack longer than the weights is an error.
    """
    stack = as_frame_stack(frames)
    n = stack.shape[0]

    if isinstance(weights, WeightVector):
        raw = weights.values
        kind = weights.kind
    else:
        raw = np.asarray(weights, dtype=np.float64)
        kind = "custom"
    if n > len(raw):
        raise InvalidParameterError(f"sub-sequence has {n} frames but only {len(raw)} weights")
    w = normalize_weights(raw[:n])

    # dtype=float64 makes einsum cast per buffered block inside the C loop:
    # full-f64 accuracy without materializing an 8x-larger copy of the stack
    values = np.einsum("q,qhwc->hwc", w, stack, dtype=np.float64)
    return EncodedImage(
        values=values,
        start=int(start),
        end=int(start) + n,
        weight_kind=kind,
        subseq_len=int(subseq_len) if subseq_len is not None else len(raw),
    )


def _blend_segment(stack: np.ndarray, raw: np.ndarray, kind: str, start: int, subseq_len: int) -> EncodedImage:
    n = stack.shape[0]
    w = normalize_weights(raw[:n])
    values = np.einsum("q,qhwc->hwc", w, stack, dtype=np.float64)
    return EncodedImage(values=values, start=start, end=start + n, weight_kind=kind, subseq_len=subseq_len)


def encode_video(
    frames,
    subseq_len: int,
    weights: str | WeightVector = "ramp",
    mu: float | None = None,
    sigma: float | None = None,
    tail: str = "keep",
    jobs: int | None = None,
) -> list[EncodedImage]:
    """Encode a whole video: one blended image per sub-sequence.

    ``frames`` is an (N, H, W[, C]) array or any iterable of frames; iterables
    are consumed segment by segment so arbitrarily long videos stream through
    in bounded memory. ``weights`` selects a builtin kind by name or supplies
    a prebuilt WeightVector whose length must equal ``subseq_len``.

    Output order always follows segment order and is bitwise independent of
    ``jobs``.
    """
    subseq_len = check_subseq_len(subseq_len)
    tail = check_tail(tail)
    jobs = check_jobs(jobs)
    if isinstance(weights, WeightVector):
        if len(weights) != subseq_len:
            raise InvalidParameterError(
                f"weight vector length {len(weights)} does not match subseq_len {subseq_len}"
            )
        wvec = weights
    else:
        wvec = make_weights(weights, subseq_len, mu=mu, sigma=sigma)
    raw = wvec.values

    segments = _segment_stacks(frames, subseq_len, tail)
    if jobs == 1:
        return [_blend_segment(stack, raw, wvec.kind, start, subseq_len) for start, stack in segments]

    # FIFO submit/collect keeps segment order (hence byte-identical output)
    # and bounds in-flight stacks so streamed inputs stay in bounded memory
    results: list[EncodedImage] = []
    pending: deque = deque()
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for start, stack in segments:
            pending.append(pool.submit(_blend_segment, stack, raw, wvec.kind, start, subseq_len))
            while len(pending) > 2 * jobs:
                results.append(pending.popleft().result())
        while pending:
            results.append(pending.popleft().result())
    return results


def _segment_stacks(frames, subseq_len: int, tail: str):
    """Yield (start, (Z', H, W, C) stack) per segment, validating shapes."""
    if isinstance(frames, np.ndarray):
        if frames.ndim == 3:
            frames = frames[:, :, :, np.newaxis]
        if frames.ndim != 4:
            raise ShapeError(f"expected (N, H, W) or (N, H, W, C) array, got shape {frames.shape}")
        n = frames.shape[0]
        if n == 0:
            raise EmptyInputError("empty frame stack")
        as_frame(frames[0], index=0)
        for start, length in partition_segments(n, subseq_len, tail):
            yield start, frames[start : start + length]
        return

    buffer: list[np.ndarray] = []
    shape = None
    start = 0
    count = 0
    for i, frame in enumerate(frames):
        arr = as_frame(frame, index=i)
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise ShapeError(f"frame {i} has shape {arr.shape}, expected {shape} (shape drift mid-stream)")
        buffer.append(arr)
        count += 1
        if len(buffer) == subseq_len:
            yield start, np.stack(buffer)
            start += subseq_len
            buffer = []
    if count == 0:
        raise EmptyInputError("empty frame stream")
    if buffer and tail == "keep":
        yield start, np.stack(buffer)
