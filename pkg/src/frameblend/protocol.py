"""Dataset manifests and evaluation plans.

A manifest is a JSON document describing one dataset: its name and one
entry per sample (id, live/spoof label with attack tag, train/dev/test
split, plus an opaque reference to where its frames live). Datasets
themselves are never bundled; the public face PAD corpora are distributed
under end-user agreements, so users fill in manifests for their own copies.

Plans come in two kinds. Intra-database scores one dataset against itself.
Cross-database fixes the decision threshold on the source dataset and
reports the error it yields on a different target dataset; the threshold
rule never sees target labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import InvalidPlanError, ManifestError

SPLITS = ("train", "dev", "test")
LABELS = ("live", "spoof")


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    label: str
    split: str
    attack: str | None = None
    source: Any = None


@dataclass(frozen=True)
class ProtocolManifest:
    dataset_name: str
    entries: tuple[ManifestEntry, ...]

    def split(self, name: str) -> list[ManifestEntry]:
        if name not in SPLITS:
            raise ManifestError(f"unknown split {name!r}; allowed: {', '.join(SPLITS)}")
        return [e for e in self.entries if e.split == name]

    def ids(self) -> list[str]:
        return [e.id for e in self.entries]


@dataclass(frozen=True)
class EvaluationPlan:
    """How to score: ``kind`` is "intra" or "cross". For cross plans the
    threshold is fixed at the source dataset's EER point and applied to the
    target unchanged."""

    kind: str
    source: ProtocolManifest
    target: ProtocolManifest | None = None
    threshold_rule: str = "eer-on-source"


def _entry_from_dict(raw: dict, position: int) -> ManifestEntry:
    where = f"entry {position}"
    if not isinstance(raw, dict):
        raise ManifestError(f"{where}: expected an object, got {type(raw).__name__}")
    sample_id = raw.get("id")
    if not isinstance(sample_id, str) or not sample_id:
        raise ManifestError(f"{where}: 'id' must be a non-empty string")
    label = raw.get("label")
    if label not in LABELS:
        raise ManifestError(f"{where} ({sample_id!r}): label {label!r} not in {LABELS}")
    split = raw.get("split")
    if split not in SPLITS:
        raise ManifestError(
            f"{where} ({sample_id!r}): unknown split {split!r}; allowed values: {', '.join(SPLITS)}"
        )
    attack = raw.get("attack")
    if label == "spoof":
        if not isinstance(attack, str) or not attack:
            raise ManifestError(f"{where} ({sample_id!r}): spoof entries need a non-empty 'attack' tag")
    elif attack is not None and not isinstance(attack, str):
        raise ManifestError(f"{where} ({sample_id!r}): 'attack' must be a string when present")
    return ManifestEntry(id=sample_id, label=label, split=split, attack=attack, source=raw.get("source"))


def manifest_from_dict(data: dict) -> ProtocolManifest:
    if not isinstance(data, dict):
        raise ManifestError(f"manifest root must be an object, got {type(data).__name__}")
    name = data.get("dataset_name")
    if not isinstance(name, str) or not name:
        raise ManifestError("manifest needs a non-empty 'dataset_name'")
    raw_entries = data.get("entries")
    if not isinstance(raw_entries, list) or not raw_entries:
        raise ManifestError("manifest needs a non-empty 'entries' list")
    entries = tuple(_entry_from_dict(raw, i) for i, raw in enumerate(raw_entries))
    seen: set[str] = set()
    for e in entries:
        if e.id in seen:
            raise ManifestError(f"duplicate sample id {e.id!r}")
        seen.add(e.id)
    return ProtocolManifest(dataset_name=name, entries=entries)


def manifest_to_dict(manifest: ProtocolManifest) -> dict:
    entries = []
    for e in manifest.entries:
        item: dict[str, Any] = {"id": e.id, "label": e.label}
        if e.attack is not None:
            item["attack"] = e.attack
        item["split"] = e.split
        if e.source is not None:
            item["source"] = e.source
        entries.append(item)
    return {"dataset_name": manifest.dataset_name, "entries": entries}


def load_manifest(path) -> ProtocolManifest:
    """Read and validate a manifest JSON file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        return manifest_from_dict(data)
    except ManifestError as exc:
        raise ManifestError(f"{path}: {exc}") from exc


def save_manifest(manifest: ProtocolManifest, path) -> None:
    Path(path).write_text(json.dumps(manifest_to_dict(manifest), indent=2) + "\n", encoding="utf-8")


def manifest_from_labels(dataset_name: str, labels_by_id: dict[str, str], split: str = "test") -> ProtocolManifest:
    """Build a minimal manifest (single split) from id -> label pairs.

    Used when scoring bare score files with no curated manifest; spoof
    entries get the placeholder attack tag "unknown".
    """
    if not labels_by_id:
        raise ManifestError("cannot build a manifest from zero records")
    entries = tuple(
        ManifestEntry(
            id=sample_id,
            label=label,
            split=split,
            attack="unknown" if label == "spoof" else None,
        )
        for sample_id, label in labels_by_id.items()
    )
    return ProtocolManifest(dataset_name=dataset_name, entries=entries)


def plan_intra_database(manifest: ProtocolManifest) -> EvaluationPlan:
    if not manifest.split("test"):
        raise InvalidPlanError(f"dataset {manifest.dataset_name!r} has no test entries")
    return EvaluationPlan(kind="intra", source=manifest)


def plan_cross_database(source: ProtocolManifest, target: ProtocolManifest) -> EvaluationPlan:
    """Threshold fixed on the source dataset, error reported on the target."""
    if source.dataset_name == target.dataset_name:
        raise InvalidPlanError(
            f"cross-database plan needs two distinct datasets, got {source.dataset_name!r} twice"
        )
    for manifest in (source, target):
        if not manifest.split("test"):
            raise InvalidPlanError(f"dataset {manifest.dataset_name!r} has no test entries")
    return EvaluationPlan(kind="cross", source=source, target=target)
