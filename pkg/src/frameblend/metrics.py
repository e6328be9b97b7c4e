"""ROC, EER and HTER over liveness score records.

Conventions, fixed so counts are reproducible:

* higher score = more live; a sample is accepted as live iff score >= t
* FAR = fraction of spoof samples accepted, FRR = fraction of live
  samples rejected
* thresholds sweep the distinct score values plus -inf/+inf sentinels
* AUC integrates the ROC by the trapezoidal rule, which weights ties 1/2
* EER sits where FAR crosses FRR; crossings between sweep points are
  resolved by linear interpolation (exact crossings are detected in
  integer arithmetic, so no interpolation noise when one exists)
* HTER(t) = (FAR(t) + FRR(t)) / 2 with t supplied externally and never
  tuned on the data being scored
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CoverageError,
    DegenerateClassError,
    InvalidParameterError,
    ManifestError,
    ScoreFileError,
)
from .protocol import EvaluationPlan, ProtocolManifest

POLARITIES = ("live", "spoof")


@dataclass(frozen=True)
class ScoreRecord:
    """One scored sample; ``label`` is "live" or "spoof"."""

    id: str
    label: str
    score: float


@dataclass(frozen=True)
class RocCurve:
    """ROC sampled at every distinct score plus -inf/+inf sentinels.

    Thresholds ascend, so tpr and fpr both fall monotonically from (1, 1)
    to (0, 0) along the sweep.
    """

    thresholds: np.ndarray
    fpr: np.ndarray
    tpr: np.ndarray
    auc: float

    def to_csv(self) -> str:
        lines = ["threshold,fpr,tpr"]
        for t, f, p in zip(self.thresholds, self.fpr, self.tpr):
            lines.append(f"{float(t)!r},{float(f)!r},{float(p)!r}")
        return "\n".join(lines) + "\n"


def split_scores(records: list[ScoreRecord]) -> tuple[np.ndarray, np.ndarray]:
    """Return (live_scores, spoof_scores); both classes must be present."""
    live = np.array([r.score for r in records if r.label == "live"], dtype=np.float64)
    spoof = np.array([r.score for r in records if r.label == "spoof"], dtype=np.float64)
    for r in records:
        if r.label not in ("live", "spoof"):
            raise InvalidParameterError(f"record {r.id!r} has unknown label {r.label!r}")
    if live.size == 0 or spoof.size == 0:
        raise DegenerateClassError(
            f"need at least one live and one spoof record, got {live.size} live / {spoof.size} spoof"
        )
    if not (np.isfinite(live).all() and np.isfinite(spoof).all()):
        raise InvalidParameterError("scores must be finite")
    return live, spoof


def _sweep(live: np.ndarray, spoof: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thresholds plus integer accept counts per class at each threshold."""
    thresholds = np.concatenate(([-np.inf], np.unique(np.concatenate((live, spoof))), [np.inf]))
    live_sorted = np.sort(live)
    spoof_sorted = np.sort(spoof)
    live_accept = live.size - np.searchsorted(live_sorted, thresholds, side="left")
    spoof_accept = spoof.size - np.searchsorted(spoof_sorted, thresholds, side="left")
    return thresholds, live_accept.astype(np.int64), spoof_accept.astype(np.int64)


def roc_from_scores(live: np.ndarray, spoof: np.ndarray) -> RocCurve:
    thresholds, live_accept, spoof_accept = _sweep(live, spoof)
    tpr = live_accept / live.size
    fpr = spoof_accept / spoof.size
    auc = float(-np.trapezoid(tpr, fpr))
    return RocCurve(thresholds=thresholds, fpr=fpr, tpr=tpr, auc=min(1.0, max(0.0, auc)))


def roc(records: list[ScoreRecord]) -> RocCurve:
    live, spoof = split_scores(records)
    return roc_from_scores(live, spoof)


def eer_from_scores(live: np.ndarray, spoof: np.ndarray) -> tuple[float, float]:
    """Equal error rate and the threshold where FAR meets FRR.

    The sign of FAR - FRR is tracked in cross-multiplied integer counts, so
    an exact crossing on the sweep is recognized exactly; otherwise the
    crossing of the two piecewise-linear rate curves between the adjacent
    sweep points is reported. An interpolated threshold falling against an
    infinite sentinel clamps to the finite endpoint.
    """
    thresholds, live_accept, spoof_accept = _sweep(live, spoof)
    n_live, n_spoof = live.size, spoof.size
    live_reject = n_live - live_accept
    # FAR - FRR = spoof_accept/n_spoof - live_reject/n_live, scaled exact:
    diff = spoof_accept * n_live - live_reject * n_spoof

    exact = np.nonzero(diff == 0)[0]
    if exact.size:
        i = int(exact[0])
        return float(spoof_accept[i] / n_spoof), float(thresholds[i])

    i = int(np.nonzero(diff > 0)[0][-1])
    j = i + 1
    far_i, far_j = spoof_accept[i] / n_spoof, spoof_accept[j] / n_spoof
    alpha = float(diff[i] / (diff[i] - diff[j]))
    value = far_i + alpha * (far_j - far_i)
    if math.isfinite(thresholds[i]) and math.isfinite(thresholds[j]):
        threshold = thresholds[i] + alpha * (thresholds[j] - thresholds[i])
    elif math.isfinite(thresholds[j]):
        threshold = thresholds[j]
    else:
        threshold = thresholds[i]
    return float(value), float(threshold)


def eer(records: list[ScoreRecord]) -> tuple[float, float]:
    live, spoof = split_scores(records)
    return eer_from_scores(live, spoof)


def far_frr(live: np.ndarray, spoof: np.ndarray, threshold: float) -> tuple[float, float]:
    """Direct counting of both error rates at one threshold."""
    if not math.isfinite(threshold):
        raise InvalidParameterError(f"threshold must be finite, got {threshold}")
    far = float(np.count_nonzero(spoof >= threshold) / spoof.size)
    frr = float(np.count_nonzero(live < threshold) / live.size)
    return far, frr


def hter_from_scores(live: np.ndarray, spoof: np.ndarray, threshold: float) -> float:
    far, frr = far_frr(live, spoof, threshold)
    return (far + frr) / 2.0


def hter(records: list[ScoreRecord], threshold: float) -> float:
    """Half total error rate at an externally supplied threshold."""
    live, spoof = split_scores(records)
    return hter_from_scores(live, spoof, threshold)


def aggregate_by_id(records: list[ScoreRecord], how: str = "mean") -> list[ScoreRecord]:
    """Collapse per-frame records to one per sample id (mean score).

    Labels within one id must agree. Output preserves first-seen id order.
    """
    if how != "mean":
        raise InvalidParameterError(f"unknown aggregation {how!r}; only 'mean' is supported")
    order: list[str] = []
    labels: dict[str, str] = {}
    scores: dict[str, list[float]] = {}
    for r in records:
        if r.id not in labels:
            order.append(r.id)
            labels[r.id] = r.label
            scores[r.id] = []
        elif labels[r.id] != r.label:
            raise InvalidParameterError(f"id {r.id!r} carries both labels {labels[r.id]!r} and {r.label!r}")
        scores[r.id].append(r.score)
    return [ScoreRecord(id=i, label=labels[i], score=float(np.mean(scores[i]))) for i in order]


# ---------------------------------------------------------------------------
# score files: CSV with header id,label,score; '#'-prefixed comment lines may
# precede the header, e.g. "# polarity: spoof" when higher score = more spoof.


def read_score_file(path, polarity: str | None = None) -> list[ScoreRecord]:
    """Parse a score CSV. Scores are normalized so higher = more live:
    when the effective polarity is "spoof" they are negated on load."""
    path = Path(path)
    declared = None
    rows: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                body = stripped.lstrip("#").strip()
                for sep in (":", "="):
                    if sep in body:
                        key, _, value = body.partition(sep)
                        if key.strip().lower() == "polarity":
                            declared = value.strip().lower()
                        break
                continue
            rows.append((lineno, next(csv.reader([line]))))
    if not rows:
        raise ScoreFileError(f"{path}: no data rows")
    header_line, header = rows[0]
    if [h.strip().lower() for h in header] != ["id", "label", "score"]:
        raise ScoreFileError(f"{path}: line {header_line}: header must be 'id,label,score', got {','.join(header)!r}")

    effective = polarity or declared or "live"
    if effective not in POLARITIES:
        raise ScoreFileError(f"{path}: polarity must be one of {POLARITIES}, got {effective!r}")
    flip = effective == "spoof"

    records = []
    for lineno, row in rows[1:]:
        if len(row) != 3:
            raise ScoreFileError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
        sample_id, label, score_text = (field.strip() for field in row)
        if not sample_id:
            raise ScoreFileError(f"{path}: line {lineno}: empty id")
        label = label.lower()
        if label not in ("live", "spoof"):
            raise ScoreFileError(f"{path}: line {lineno}: label must be live or spoof, got {label!r}")
        try:
            score = float(score_text)
        except ValueError:
            raise ScoreFileError(f"{path}: line {lineno}: score {score_text!r} is not a number") from None
        if not math.isfinite(score):
            raise ScoreFileError(f"{path}: line {lineno}: score must be finite, got {score_text}")
        records.append(ScoreRecord(id=sample_id, label=label, score=-score if flip else score))
    if not records:
        raise ScoreFileError(f"{path}: no score rows after header")
    return records


def write_score_file(records: list[ScoreRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("id,label,score\n")
        for r in records:
            fh.write(f"{r.id},{r.label},{r.score!r}\n")


# ---------------------------------------------------------------------------
# plan-level evaluation


@dataclass(frozen=True)
class EvaluationReport:
    kind: str
    source_dataset: str
    eer_source: float
    threshold: float
    threshold_split: str
    auc_source: float
    hter_source: float | None = None
    target_dataset: str | None = None
    hter_target: float | None = None
    auc_target: float | None = None
    n_source: int = 0
    n_target: int | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["key,value"] + [f"{k},{v}" for k, v in self.to_dict().items()]
        return "\n".join(lines) + "\n"


def records_for_split(records: list[ScoreRecord], manifest: ProtocolManifest, split: str) -> list[ScoreRecord]:
    """Score records for one manifest split, in manifest order.

    Every manifest entry of the split must be covered; records for ids
    outside the split are ignored. Labels must agree with the manifest.
    """
    by_id: dict[str, ScoreRecord] = {}
    for r in records:
        if r.id in by_id:
            raise InvalidParameterError(
                f"duplicate score records for id {r.id!r}; aggregate per-frame scores first"
            )
        by_id[r.id] = r
    wanted = manifest.split(split)
    missing = [e.id for e in wanted if e.id not in by_id]
    if missing:
        preview = ", ".join(missing[:10])
        raise CoverageError(
            f"scores missing for {len(missing)} {manifest.dataset_name!r} {split} ids: {preview}",
            missing_ids=missing,
        )
    out = []
    for entry in wanted:
        record = by_id[entry.id]
        if record.label != entry.label:
            raise ManifestError(
                f"id {entry.id!r}: score file says {record.label!r} but manifest says {entry.label!r}"
            )
        out.append(record)
    return out


def evaluate(
    plan: EvaluationPlan,
    source_scores: list[ScoreRecord],
    target_scores: list[ScoreRecord] | None = None,
    threshold_split: str = "test",
) -> EvaluationReport:
    """Run a plan: EER fixes the threshold on the source, HTER reports it.

    ``threshold_split`` picks which source split fixes the threshold ("test"
    by default, "dev" for protocols with a development set). Target labels
    never influence the threshold.
    """
    if threshold_split not in ("test", "dev"):
        raise InvalidParameterError(f"threshold_split must be 'test' or 'dev', got {threshold_split!r}")

    source_test = records_for_split(source_scores, plan.source, "test")
    eer_value, threshold = eer(source_test)
    if threshold_split == "dev":
        dev_records = records_for_split(source_scores, plan.source, "dev")
        if not dev_records:
            raise InvalidParameterError(f"dataset {plan.source.dataset_name!r} has no dev entries")
        _, threshold = eer(dev_records)
    curve_source = roc(source_test)

    if plan.kind == "intra":
        return EvaluationReport(
            kind="intra",
            source_dataset=plan.source.dataset_name,
            eer_source=eer_value,
            threshold=threshold,
            threshold_split=threshold_split,
            auc_source=curve_source.auc,
            hter_source=hter(source_test, threshold),
            n_source=len(source_test),
        )

    if plan.kind != "cross":
        raise InvalidParameterError(f"unknown plan kind {plan.kind!r}")
    if plan.target is None or target_scores is None:
        raise InvalidParameterError("cross-database evaluation needs a target manifest and target scores")
    target_test = records_for_split(target_scores, plan.target, "test")
    curve_target = roc(target_test)
    return EvaluationReport(
        kind="cross",
        source_dataset=plan.source.dataset_name,
        eer_source=eer_value,
        threshold=threshold,
        threshold_split=threshold_split,
        auc_source=curve_source.auc,
        target_dataset=plan.target.dataset_name,
        hter_target=hter(target_test, threshold),
        auc_target=curve_target.auc,
        n_source=len(source_test),
        n_target=len(target_test),
    )
