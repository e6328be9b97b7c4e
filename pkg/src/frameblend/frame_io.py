"""Frame ingest and encoded-image export.

Readers yield (H, W, C) uint8 frames in index order from three source kinds:
a directory of images (lexicographic filename order), a raw RGB24
interleaved file, or an uncompressed Y4M stream. There is deliberately no
compressed-video demuxing; extract frames first (see README for the ffmpeg
recipe) or supply raw/Y4M.

Writers emit either PNG (8-bit, round-half-to-even quantization) or NPY
(float32, C-order, shape (H, W, C)) plus a JSON-lines sidecar manifest
mapping each file to its source frame range.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np
from PIL import Image, UnidentifiedImageError

from .encoding import EncodedImage, quantize_to_uint8
from .errors import (
    DecodeError,
    EmptyInputError,
    InvalidParameterError,
    OutputCollisionError,
    ShapeError,
)

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff")
SOURCE_KINDS = ("dir", "raw", "y4m")
OUTPUT_FORMATS = ("png", "npy")
SIDECAR_NAME = "manifest.jsonl"
DEFAULT_NAME_PATTERN = "seg_{start:06d}"


@dataclass(frozen=True)
class FrameSource:
    """Where frames come from; ``width``/``height`` are required for raw."""

    kind: str
    path: Path
    width: int | None = None
    height: int | None = None


def image_directory(path) -> FrameSource:
    return FrameSource(kind="dir", path=Path(path))


def raw_rgb24(path, width: int, height: int) -> FrameSource:
    width, height = int(width), int(height)
    if width < 1 or height < 1:
        raise InvalidParameterError(f"raw video dimensions must be positive, got {width}x{height}")
    return FrameSource(kind="raw", path=Path(path), width=width, height=height)


def y4m_stream(path) -> FrameSource:
    return FrameSource(kind="y4m", path=Path(path))


def read_frames(source: FrameSource) -> Iterator[np.ndarray]:
    """Yield the source's frames as (H, W, C) uint8 arrays, index order."""
    if source.kind == "dir":
        return _read_image_directory(source.path)
    if source.kind == "raw":
        return _read_raw_rgb24(source.path, source.width, source.height)
    if source.kind == "y4m":
        return _read_y4m(source.path)
    raise InvalidParameterError(f"unknown source kind {source.kind!r}; expected one of {SOURCE_KINDS}")


def _read_image_directory(path: Path) -> Iterator[np.ndarray]:
    if not path.is_dir():
        raise FileNotFoundError(f"no such directory: {path}")
    names = sorted(p.name for p in path.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)
    if not names:
        raise EmptyInputError(f"no image files in {path}")
    shape = None
    for name in names:
        file = path / name
        try:
            with Image.open(file) as img:
                if img.mode == "L":
                    arr = np.asarray(img, dtype=np.uint8)[:, :, np.newaxis]
                else:
                    arr = np.asarray(img.convert("RGB"), dtype=np.uint8)
        except UnidentifiedImageError as exc:
            raise DecodeError(f"cannot decode image {file}") from exc
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise ShapeError(f"{file} decodes to shape {arr.shape}, expected {shape}")
        yield arr


def _read_raw_rgb24(path: Path, width: int, height: int) -> Iterator[np.ndarray]:
    frame_bytes = width * height * 3
    size = os.stat(path).st_size
    if size % frame_bytes != 0:
        raise ShapeError(
            f"{path}: size {size} is not a multiple of {frame_bytes} "
            f"({width}x{height}x3 bytes per RGB24 frame)"
        )
    if size == 0:
        raise EmptyInputError(f"{path} contains zero frames")
    with open(path, "rb") as fh:
        index = 0
        while True:
            buf = fh.read(frame_bytes)
            if not buf:
                break
            if len(buf) != frame_bytes:
                raise ShapeError(f"{path}: truncated read at frame {index}")
            yield np.frombuffer(buf, dtype=np.uint8).reshape(height, width, 3)
            index += 1


# BT.601 limited-range YUV -> RGB. Mono streams pass through unscaled.
_KR, _KB = 0.299, 0.114
_KG = 1.0 - _KR - _KB
_Y_SCALE = 255.0 / 219.0
_C_SCALE = 255.0 / 224.0


def _yuv_to_rgb(y: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    yf = (y.astype(np.float64) - 16.0) * _Y_SCALE
    cb = u.astype(np.float64) - 128.0
    cr = v.astype(np.float64) - 128.0
    r = yf + _C_SCALE * 2.0 * (1.0 - _KR) * cr
    b = yf + _C_SCALE * 2.0 * (1.0 - _KB) * cb
    g = yf - _C_SCALE * (2.0 * (1.0 - _KB) * _KB / _KG) * cb - _C_SCALE * (2.0 * (1.0 - _KR) * _KR / _KG) * cr
    return quantize_to_uint8(np.stack([r, g, b], axis=-1))


def _read_y4m(path: Path) -> Iterator[np.ndarray]:
    with open(path, "rb") as fh:
        header = fh.readline()
        if not header.startswith(b"YUV4MPEG2"):
            raise DecodeError(f"{path}: missing YUV4MPEG2 signature")
        width = height = None
        colorspace = "420jpeg"
        for token in header.split()[1:]:
            tag, value = token[:1], token[1:].decode("ascii", "replace")
            if tag == b"W":
                width = int(value)
            elif tag == b"H":
                height = int(value)
            elif tag == b"C":
                colorspace = value
        if not width or not height:
            raise DecodeError(f"{path}: header lacks W/H")
        if colorspace.startswith("420"):
            if width % 2 or height % 2:
                raise ShapeError(f"{path}: 4:2:0 requires even dimensions, got {width}x{height}")
            chroma_shape = (height // 2, width // 2)
            upsample = (2, 2)
        elif colorspace.startswith("422"):
            if width % 2:
                raise ShapeError(f"{path}: 4:2:2 requires even width, got {width}")
            chroma_shape = (height, width // 2)
            upsample = (1, 2)
        elif colorspace.startswith("444"):
            chroma_shape = (height, width)
            upsample = (1, 1)
        elif colorspace == "mono":
            chroma_shape = None
            upsample = None
        else:
            raise DecodeError(f"{path}: unsupported colorspace C{colorspace}")

        index = 0
        while True:
            marker = fh.readline()
            if not marker:
                break
            if not marker.startswith(b"FRAME"):
                raise DecodeError(f"{path}: expected FRAME marker at frame {index}")
            y = _read_plane(fh, path, index, (height, width))
            if chroma_shape is None:
                yield y[:, :, np.newaxis]
            else:
                u = _read_plane(fh, path, index, chroma_shape)
                v = _read_plane(fh, path, index, chroma_shape)
                u = np.repeat(np.repeat(u, upsample[0], axis=0), upsample[1], axis=1)
                v = np.repeat(np.repeat(v, upsample[0], axis=0), upsample[1], axis=1)
                yield _yuv_to_rgb(y, u, v)
            index += 1
        if index == 0:
            raise EmptyInputError(f"{path} contains zero frames")


def _read_plane(fh, path: Path, index: int, shape: tuple[int, int]) -> np.ndarray:
    n = shape[0] * shape[1]
    buf = fh.read(n)
    if len(buf) != n:
        raise ShapeError(f"{path}: truncated plane data at frame {index}")
    return np.frombuffer(buf, dtype=np.uint8).reshape(shape)


def write_encoded(
    images: list[EncodedImage],
    out_dir,
    image_format: str = "npy",
    name_pattern: str = DEFAULT_NAME_PATTERN,
    sidecar: bool = True,
) -> list[Path]:
    """Write one file per encoded image plus a JSON-lines sidecar manifest.

    PNG output applies the round-half-to-even/clamp quantization; NPY stores
    the unquantized values as float32. Existing files are overwritten so
    re-runs are idempotent, but two images mapping to the same name within
    one batch raise OutputCollisionError.
    """
    if image_format not in OUTPUT_FORMATS:
        raise InvalidParameterError(f"format must be one of {OUTPUT_FORMATS}, got {image_format!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    names = []
    for img in images:
        name = name_pattern.format(start=img.start, end=img.end) + "." + image_format
        if name in names:
            raise OutputCollisionError(f"name pattern {name_pattern!r} maps two segments to {name}")
        names.append(name)

    paths = []
    for img, name in zip(images, names):
        target = out_dir / name
        payload = np.ascontiguousarray(img.values, dtype=np.float32)
        if image_format == "npy":
            with open(target, "wb") as fh:
                np.save(fh, payload)
        else:
            # quantize the same float32 payload NPY stores, so the two
            # formats agree bit-exactly after the documented rounding rule
            arr = quantize_to_uint8(payload)
            pil = Image.fromarray(arr[:, :, 0], mode="L") if arr.shape[2] == 1 else Image.fromarray(arr, mode="RGB")
            pil.save(target, format="PNG")
        paths.append(target)

    if sidecar:
        with open(out_dir / SIDECAR_NAME, "w", encoding="utf-8") as fh:
            for img, name in zip(images, names):
                fh.write(
                    json.dumps(
                        {
                            "path": name,
                            "start": img.start,
                            "end": img.end,
                            "weights": img.weight_kind,
                            "Z": img.subseq_len,
                        }
                    )
                    + "\n"
                )
    return paths


def read_npy(path) -> np.ndarray:
    """Load one exported NPY image back as written (float32, (H, W, C))."""
    return np.load(path, allow_pickle=False)
