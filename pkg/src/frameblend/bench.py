"""Encoding throughput measurement on in-memory synthetic input."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .encoding import encode_video
from .errors import InvalidParameterError
from .synthetic import random_frames
from .validation import check_jobs, check_subseq_len


@dataclass(frozen=True)
class BenchResult:
    width: int
    height: int
    channels: int
    frames: int
    subseq_len: int
    jobs: int
    iters: int
    seconds: float  # median wall time of one full-video encode
    fps: float
    mb_per_s: float

    def lines(self) -> list[str]:
        return [
            f"frames {self.frames} ({self.width}x{self.height}x{self.channels}, subseq_len {self.subseq_len}, jobs {self.jobs})",
            f"median_seconds {self.seconds:.6f}",
            f"fps {self.fps:.1f}",
            f"mb_per_s {self.mb_per_s:.1f}",
        ]


def run_bench(
    width: int,
    height: int,
    frames: int,
    subseq_len: int = 40,
    iters: int = 3,
    jobs: int = 1,
    weights: str = "ramp",
    channels: int = 3,
    seed: int = 0,
) -> BenchResult:
    """Encode a seeded random video ``iters`` times, report the median run."""
    if frames < 1:
        raise InvalidParameterError(f"frames must be >= 1, got {frames}")
    if width < 1 or height < 1:
        raise InvalidParameterError(f"dimensions must be positive, got {width}x{height}")
    if iters < 1:
        raise InvalidParameterError(f"iters must be >= 1, got {iters}")
    subseq_len = check_subseq_len(subseq_len)
    jobs = check_jobs(jobs)

    video = random_frames(frames, height, width, channels=channels, seed=seed)
    timings = []
    for _ in range(iters):
        start = time.perf_counter()
        encode_video(video, subseq_len=subseq_len, weights=weights, jobs=jobs)
        timings.append(time.perf_counter() - start)
    timings.sort()
    median = timings[len(timings) // 2] if len(timings) % 2 else 0.5 * sum(timings[len(timings) // 2 - 1 : len(timings) // 2 + 1])
    fps = frames / median
    mb = frames * height * width * channels / 1e6
    return BenchResult(
        width=width,
        height=height,
        channels=channels,
        frames=frames,
        subseq_len=subseq_len,
        jobs=jobs,
        iters=iters,
        seconds=median,
        fps=fps,
        mb_per_s=mb / median,
    )
