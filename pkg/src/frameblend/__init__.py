"""frameblend: collapse video sub-sequences into single RGB images by
normalized weighted summation, and score liveness classifiers with
EER/HTER/ROC under intra- and cross-database protocols."""

from .encoding import (
    EncodedImage,
    blend_frames,
    encode_video,
    partition_segments,
    quantize_to_uint8,
)
from .errors import (
    CoverageError,
    DecodeError,
    DegenerateClassError,
    DegenerateWeightsError,
    EmptyInputError,
    FrameblendError,
    InvalidParameterError,
    InvalidPlanError,
    ManifestError,
    OutputCollisionError,
    ScoreFileError,
    ShapeError,
)
from .estimator import SubsequenceImageEncoder
from .frame_io import (
    FrameSource,
    image_directory,
    raw_rgb24,
    read_frames,
    read_npy,
    write_encoded,
    y4m_stream,
)
from .metrics import (
    EvaluationReport,
    RocCurve,
    ScoreRecord,
    aggregate_by_id,
    eer,
    evaluate,
    hter,
    read_score_file,
    roc,
    write_score_file,
)
from .protocol import (
    EvaluationPlan,
    ManifestEntry,
    ProtocolManifest,
    load_manifest,
    manifest_from_labels,
    plan_cross_database,
    plan_intra_database,
    save_manifest,
)
from .weights import (
    WeightVector,
    gaussian_weights,
    make_weights,
    normalize_weights,
    ramp_weights,
    uniform_weights,
)

__version__ = "0.1.0"

__all__ = [
    "EncodedImage",
    "EvaluationPlan",
    "EvaluationReport",
    "FrameSource",
    "ManifestEntry",
    "ProtocolManifest",
    "RocCurve",
    "ScoreRecord",
    "SubsequenceImageEncoder",
    "WeightVector",
    "aggregate_by_id",
    "blend_frames",
    "eer",
    "encode_video",
    "evaluate",
    "gaussian_weights",
    "hter",
    "image_directory",
    "load_manifest",
    "make_weights",
    "manifest_from_labels",
    "normalize_weights",
    "partition_segments",
    "plan_cross_database",
    "plan_intra_database",
    "quantize_to_uint8",
    "ramp_weights",
    "raw_rgb24",
    "read_frames",
    "read_npy",
    "read_score_file",
    "roc",
    "save_manifest",
    "uniform_weights",
    "write_encoded",
    "write_score_file",
    "y4m_stream",
    "CoverageError",
    "DecodeError",
    "DegenerateClassError",
    "DegenerateWeightsError",
    "EmptyInputError",
    "FrameblendError",
    "InvalidParameterError",
    "InvalidPlanError",
    "ManifestError",
    "OutputCollisionError",
    "ScoreFileError",
    "ShapeError",
    "__version__",
]
