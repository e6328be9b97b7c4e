"""Command-line interface.

Subcommands: encode, sweep, metrics-eer, metrics-hter, roc, evaluate, bench.
Exit codes are stable: 0 success, 2 invalid flags or parameters, 3 I/O or
input-data error, 4 frame shape error, 5 degenerate score classes. Set
FRAMEBLEND_LOG=debug|info|warning to control log verbosity.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .bench import run_bench
from .encoding import encode_video
from .errors import (
    CoverageError,
    DecodeError,
    DegenerateClassError,
    EmptyInputError,
    FrameblendError,
    InvalidParameterError,
    InvalidPlanError,
    ManifestError,
    ScoreFileError,
    ShapeError,
)
from .frame_io import (
    DEFAULT_NAME_PATTERN,
    FrameSource,
    image_directory,
    raw_rgb24,
    read_frames,
    write_encoded,
    y4m_stream,
)
from .metrics import aggregate_by_id, eer, evaluate, hter, read_score_file, roc
from .protocol import (
    load_manifest,
    manifest_from_labels,
    plan_cross_database,
    plan_intra_database,
)

logger = logging.getLogger("frameblend")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_SHAPE = 4
EXIT_DEGENERATE = 5


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _size_list(text: str) -> list[int]:
    items = [chunk.strip() for chunk in text.split(",") if chunk.strip()]
    if not items:
        raise argparse.ArgumentTypeError("needs at least one size, e.g. 30,40,50,60")
    try:
        sizes = [int(item) for item in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"sizes must be integers: {exc}") from None
    if any(size < 1 for size in sizes):
        raise argparse.ArgumentTypeError("sizes must be >= 1")
    return sizes


def _add_encode_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", required=True, help="frame source path")
    sub.add_argument(
        "--input-kind",
        choices=("auto", "dir", "raw", "y4m"),
        default="auto",
        help="source kind; auto = directory -> dir, *.y4m -> y4m, else raw",
    )
    sub.add_argument("--width", type=_positive_int, help="frame width (raw input only)")
    sub.add_argument("--height", type=_positive_int, help="frame height (raw input only)")
    sub.add_argument("--weights", choices=("ramp", "gaussian", "uniform"), default="ramp")
    sub.add_argument("--mu", type=float, help="gaussian center over positions 1..Z")
    sub.add_argument("--sigma", type=float, help="gaussian width; must be > 0")
    sub.add_argument("--tail", choices=("keep", "drop"), default="keep")
    sub.add_argument("--format", choices=("png", "npy"), default="npy")
    sub.add_argument("--out-dir", required=True)
    sub.add_argument("--name-pattern", default=DEFAULT_NAME_PATTERN, help="output basename; {start} is the segment start frame")
    sub.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)


def _add_score_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--polarity", choices=("live", "spoof"), help="which class higher scores mean; overrides the file header")
    sub.add_argument("--aggregate-frames", action="store_true", help="mean-pool multiple records per id before scoring")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frameblend",
        description="Blend video sub-sequences into single images and score liveness classifiers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    encode = commands.add_parser("encode", help="encode one video into blended images")
    _add_encode_flags(encode)
    encode.add_argument("--subseq-len", type=_positive_int, default=40, help="frames per blended image")
    encode.set_defaults(func=cmd_encode)

    sweep = commands.add_parser("sweep", help="encode at several sub-sequence lengths")
    _add_encode_flags(sweep)
    sweep.add_argument("--sizes", type=_size_list, required=True, help="comma-separated lengths, e.g. 30,40,50,60")
    sweep.set_defaults(func=cmd_sweep)

    eer_cmd = commands.add_parser("metrics-eer", help="equal error rate of a score file")
    eer_cmd.add_argument("--scores", required=True)
    _add_score_flags(eer_cmd)
    eer_cmd.add_argument("--out", help="write the result as JSON")
    eer_cmd.set_defaults(func=cmd_metrics_eer)

    hter_cmd = commands.add_parser("metrics-hter", help="half total error rate at a fixed threshold")
    hter_cmd.add_argument("--scores", required=True)
    hter_cmd.add_argument("--threshold", type=float, required=True)
    _add_score_flags(hter_cmd)
    hter_cmd.add_argument("--out", help="write the result as JSON")
    hter_cmd.set_defaults(func=cmd_metrics_hter)

    roc_cmd = commands.add_parser("roc", help="export the ROC sweep as CSV")
    roc_cmd.add_argument("--scores", required=True)
    _add_score_flags(roc_cmd)
    roc_cmd.add_argument("--out", help="CSV destination; stdout when omitted")
    roc_cmd.set_defaults(func=cmd_roc)

    ev = commands.add_parser("evaluate", help="run an intra- or cross-database evaluation")
    ev.add_argument("--mode", choices=("intra", "cross"), help="inferred from the flags when omitted")
    ev.add_argument("--scores", help="score file (intra mode)")
    ev.add_argument("--manifest", help="dataset manifest (intra mode)")
    ev.add_argument("--source-scores", help="score file that fixes the threshold (cross mode)")
    ev.add_argument("--target-scores", help="score file the threshold is applied to (cross mode)")
    ev.add_argument("--source-manifest")
    ev.add_argument("--target-manifest")
    ev.add_argument("--source-name", help="dataset name when no source manifest is given")
    ev.add_argument("--target-name", help="dataset name when no target manifest is given")
    ev.add_argument("--threshold-split", choices=("test", "dev"), default="test")
    _add_score_flags(ev)
    ev.add_argument("--out", help="write the report; .csv extension selects CSV, otherwise JSON")
    ev.add_argument("--roc-out", help="directory for source_roc.csv / target_roc.csv")
    ev.set_defaults(func=cmd_evaluate)

    bench = commands.add_parser("bench", help="measure encoding throughput on synthetic input")
    bench.add_argument("--width", type=_positive_int, default=224)
    bench.add_argument("--height", type=_positive_int, default=224)
    bench.add_argument("--frames", type=_positive_int, default=1000)
    bench.add_argument("--subseq-len", type=_positive_int, default=40)
    bench.add_argument("--iters", type=_positive_int, default=3)
    bench.add_argument("--jobs", type=_positive_int, default=1)
    bench.add_argument("--weights", choices=("ramp", "gaussian", "uniform"), default="ramp")
    bench.set_defaults(func=cmd_bench)

    return parser


def _frame_source(args) -> FrameSource:
    path = Path(args.input)
    kind = args.input_kind
    if kind == "auto":
        if path.is_dir():
            kind = "dir"
        elif path.suffix.lower() == ".y4m":
            kind = "y4m"
        else:
            kind = "raw"
    if kind == "dir":
        return image_directory(path)
    if kind == "y4m":
        return y4m_stream(path)
    if args.width is None or args.height is None:
        raise InvalidParameterError("raw input needs --width and --height")
    return raw_rgb24(path, args.width, args.height)


def _encode_one(args, subseq_len: int, out_dir: Path) -> list[Path]:
    source = _frame_source(args)
    images = encode_video(
        read_frames(source),
        subseq_len=subseq_len,
        weights=args.weights,
        mu=args.mu,
        sigma=args.sigma,
        tail=args.tail,
        jobs=args.jobs,
    )
    paths = write_encoded(images, out_dir, image_format=args.format, name_pattern=args.name_pattern)
    logger.info("encoded %d segments from %s into %s", len(paths), args.input, out_dir)
    return paths


def cmd_encode(args) -> int:
    paths = _encode_one(args, args.subseq_len, Path(args.out_dir))
    print(f"wrote {len(paths)} {args.format} files to {args.out_dir}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    base = Path(args.out_dir)
    for size in args.sizes:
        out_dir = base / f"z{size}"
        paths = _encode_one(args, size, out_dir)
        print(f"subseq_len {size}: wrote {len(paths)} {args.format} files to {out_dir}")
    return EXIT_OK


def _load_scores(path, args):
    records = read_score_file(path, polarity=args.polarity)
    if args.aggregate_frames:
        records = aggregate_by_id(records)
    return records


def cmd_metrics_eer(args) -> int:
    records = _load_scores(args.scores, args)
    value, threshold = eer(records)
    print(f"EER: {value:.6f}")
    print(f"threshold: {threshold:.6g}")
    if args.out:
        Path(args.out).write_text(json.dumps({"eer": value, "threshold": threshold}, indent=2) + "\n")
    return EXIT_OK


def cmd_metrics_hter(args) -> int:
    records = _load_scores(args.scores, args)
    value = hter(records, args.threshold)
    print(f"HTER: {value:.6f}")
    if args.out:
        Path(args.out).write_text(json.dumps({"hter": value, "threshold": args.threshold}, indent=2) + "\n")
    return EXIT_OK


def cmd_roc(args) -> int:
    records = _load_scores(args.scores, args)
    curve = roc(records)
    if args.out:
        Path(args.out).write_text(curve.to_csv())
        print(f"AUC: {curve.auc:.6f}")
    else:
        sys.stdout.write(f"# auc={curve.auc!r}\n")
        sys.stdout.write(curve.to_csv())
    return EXIT_OK


def _implicit_manifest(records, name: str):
    return manifest_from_labels(name, {r.id: r.label for r in records})


def cmd_evaluate(args) -> int:
    mode = args.mode
    if mode is None:
        mode = "cross" if (args.source_scores or args.target_scores) else "intra"

    if mode == "intra":
        if not args.scores:
            raise InvalidParameterError("intra mode needs --scores")
        records = _load_scores(args.scores, args)
        if args.manifest:
            manifest = load_manifest(args.manifest)
        else:
            manifest = _implicit_manifest(records, Path(args.scores).stem)
        plan = plan_intra_database(manifest)
        report = evaluate(plan, records, threshold_split=args.threshold_split)
        curves = {"source": roc(records)}
    else:
        if not args.source_scores or not args.target_scores:
            raise InvalidParameterError("cross mode needs --source-scores and --target-scores")
        source_records = _load_scores(args.source_scores, args)
        target_records = _load_scores(args.target_scores, args)
        if args.source_manifest:
            source_manifest = load_manifest(args.source_manifest)
        else:
            source_name = args.source_name or Path(args.source_scores).stem
            source_manifest = _implicit_manifest(source_records, source_name)
        if args.target_manifest:
            target_manifest = load_manifest(args.target_manifest)
        else:
            target_name = args.target_name or Path(args.target_scores).stem
            if target_name == source_manifest.dataset_name:
                target_name = f"{target_name}-target"
            target_manifest = _implicit_manifest(target_records, target_name)
        plan = plan_cross_database(source_manifest, target_manifest)
        report = evaluate(plan, source_records, target_records, threshold_split=args.threshold_split)
        curves = {"source": roc(source_records), "target": roc(target_records)}

    sys.stdout.write(report.to_json())
    if args.out:
        out = Path(args.out)
        out.write_text(report.to_csv() if out.suffix.lower() == ".csv" else report.to_json())
    if args.roc_out:
        roc_dir = Path(args.roc_out)
        roc_dir.mkdir(parents=True, exist_ok=True)
        for label, curve in curves.items():
            (roc_dir / f"{label}_roc.csv").write_text(curve.to_csv())
    return EXIT_OK


def cmd_bench(args) -> int:
    result = run_bench(
        width=args.width,
        height=args.height,
        frames=args.frames,
        subseq_len=args.subseq_len,
        iters=args.iters,
        jobs=args.jobs,
        weights=args.weights,
    )
    for line in result.lines():
        print(line)
    return EXIT_OK


def main(argv=None) -> int:
    level = os.environ.get("FRAMEBLEND_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(name)s %(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateClassError,) as exc:
        print(f"frameblend: error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ShapeError as exc:
        print(f"frameblend: error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (ScoreFileError, ManifestError, DecodeError, CoverageError, EmptyInputError) as exc:
        print(f"frameblend: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvalidParameterError, InvalidPlanError) as exc:
        print(f"frameblend: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FrameblendError as exc:
        print(f"frameblend: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"frameblend: error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
