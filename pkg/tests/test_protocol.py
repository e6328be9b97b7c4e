import json

import pytest

from frameblend import (
    InvalidPlanError,
    ManifestError,
    load_manifest,
    plan_cross_database,
    plan_intra_database,
    save_manifest,
)
from frameblend.protocol import manifest_from_dict, manifest_to_dict

GOOD = {
    "dataset_name": "alpha",
    "entries": [
        {"id": "v001", "label": "live", "split": "train"},
        {"id": "v002", "label": "live", "split": "train"},
        {"id": "v003", "label": "spoof", "attack": "print", "split": "train"},
        {"id": "v004", "label": "spoof", "attack": "replay", "split": "train"},
        {"id": "v005", "label": "live", "split": "test", "source": {"kind": "dir", "path": "frames/v005"}},
        {"id": "v006", "label": "spoof", "attack": "print", "split": "test"},
    ],
}


def write_json(tmp_path, payload):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(payload, indent=2))
    return path


def test_load_minimal_train_only_manifest(tmp_path):
    payload = {
        "dataset_name": "mini",
        "entries": [
            {"id": "a", "label": "live", "split": "train"},
            {"id": "b", "label": "live", "split": "train"},
            {"id": "c", "label": "spoof", "attack": "print", "split": "train"},
            {"id": "d", "label": "spoof", "attack": "replay", "split": "train"},
        ],
    }
    manifest = load_manifest(write_json(tmp_path, payload))
    assert len(manifest.entries) == 4


def test_load_happy_path(tmp_path):
    manifest = load_manifest(write_json(tmp_path, GOOD))
    assert manifest.dataset_name == "alpha"
    assert len(manifest.entries) == 6
    assert len(manifest.split("train")) == 4
    assert manifest.entries[4].source == {"kind": "dir", "path": "frames/v005"}


def test_duplicate_id_rejected(tmp_path):
    payload = json.loads(json.dumps(GOOD))
    payload["entries"][1]["id"] = "v001"
    with pytest.raises(ManifestError, match="duplicate sample id 'v001'"):
        load_manifest(write_json(tmp_path, payload))


def test_unknown_split_lists_allowed_values(tmp_path):
    payload = json.loads(json.dumps(GOOD))
    payload["entries"][0]["split"] = "validation"
    with pytest.raises(ManifestError, match="train, dev, test"):
        load_manifest(write_json(tmp_path, payload))


def test_spoof_requires_attack_tag(tmp_path):
    payload = json.loads(json.dumps(GOOD))
    del payload["entries"][2]["attack"]
    with pytest.raises(ManifestError, match="attack"):
        load_manifest(write_json(tmp_path, payload))


def test_parse_error_carries_line_number(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text('{\n  "dataset_name": "alpha",\n  "entries": [}\n}\n')
    with pytest.raises(ManifestError, match="line 3"):
        load_manifest(path)


def test_round_trip_is_identity(tmp_path):
    manifest = manifest_from_dict(GOOD)
    path = tmp_path / "roundtrip.json"
    save_manifest(manifest, path)
    assert load_manifest(path) == manifest
    assert manifest_to_dict(manifest) == GOOD


def test_cross_plan_requires_distinct_datasets():
    alpha = manifest_from_dict(GOOD)
    beta_dict = json.loads(json.dumps(GOOD))
    beta_dict["dataset_name"] = "beta"
    beta = manifest_from_dict(beta_dict)
    plan = plan_cross_database(alpha, beta)
    assert plan.kind == "cross"
    assert plan.threshold_rule == "eer-on-source"
    with pytest.raises(InvalidPlanError):
        plan_cross_database(alpha, alpha)


def test_symmetric_cross_plan():
    alpha = manifest_from_dict(GOOD)
    beta_dict = json.loads(json.dumps(GOOD))
    beta_dict["dataset_name"] = "beta"
    beta = manifest_from_dict(beta_dict)
    forward = plan_cross_database(alpha, beta)
    backward = plan_cross_database(beta, alpha)
    assert forward.source.dataset_name == backward.target.dataset_name == "alpha"


def test_intra_plan_needs_test_entries():
    payload = json.loads(json.dumps(GOOD))
    payload["entries"] = [e for e in payload["entries"] if e["split"] != "test"]
    manifest = manifest_from_dict(payload)
    with pytest.raises(InvalidPlanError):
        plan_intra_database(manifest)


def test_empty_entries_rejected():
    with pytest.raises(ManifestError):
        manifest_from_dict({"dataset_name": "alpha", "entries": []})
