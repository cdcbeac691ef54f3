import json

import pytest

from dcatq.config import PROBE_TIMEOUT_ENV, QualityConfig, load_config
from dcatq.errors import ConfigSchemaError, IoError


def write(tmp_path, data):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return path


def test_defaults():
    cfg = load_config(None)
    assert cfg.alpha == 0.5
    assert cfg.availability_threshold_ms == 5000
    assert cfg.scalability_sizes == [250, 500, 1000, 2000, 4000]
    assert cfg.scalability_ratio_limit == 1.5
    assert cfg.similarity_measure == "jaccard"
    assert cfg.probe_timeout_ms == 10_000
    assert cfg.probe_retries == 1


def test_merge_over_defaults(tmp_path):
    cfg = load_config(write(tmp_path, {"alpha": 0.7}))
    assert cfg.alpha == 0.7
    assert cfg.availability_threshold_ms == 5000


@pytest.mark.parametrize("data, key", [
    ({"alpha": 1.5}, "alpha"),
    ({"alpha": -0.1}, "alpha"),
    ({"alhpa": 0.5}, "alhpa"),
    ({"scalability_sizes": [250, 500]}, "scalability_sizes"),
    ({"scalability_sizes": [500, 250, 1000]}, "scalability_sizes"),
    ({"scalability_ratio_limit": 1.0}, "scalability_ratio_limit"),
    ({"similarity_measure": "dice"}, "similarity_measure"),
    ({"consistency_rules": ["R9"]}, "consistency_rules"),
    ({"freshness_reference": "yesterday"}, "freshness_reference"),
    ({"required_attributes": {"dataset": ["colour"]}}, "required_attributes"),
    ({"dimensions": ["beauty"]}, "dimensions"),
])
def test_rejects(tmp_path, data, key):
    with pytest.raises(ConfigSchemaError) as info:
        load_config(write(tmp_path, data))
    assert info.value.key == key


def test_missing_file(tmp_path):
    with pytest.raises(IoError):
        load_config(tmp_path / "absent.json")


def test_digest_tracks_every_tunable():
    base = QualityConfig()
    assert base.digest() == QualityConfig().digest()
    for change in ({"alpha": 0.6}, {"availability_threshold_ms": 4000}, {"probe_retries": 2},
                   {"similarity_measure": "cosine"}, {"scalability_sizes": [100, 200, 400]}):
        assert base.with_overrides(**change).digest() != base.digest()


def test_probe_timeout_env(monkeypatch):
    monkeypatch.setenv(PROBE_TIMEOUT_ENV, "2500")
    assert QualityConfig().probe_timeout_ms == 2500
    monkeypatch.setenv(PROBE_TIMEOUT_ENV, "soon")
    with pytest.raises(ConfigSchemaError):
        QualityConfig()
