"""Assessment configuration: every tunable with its default, plus JSON loading."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigSchemaError, IoError

DIMENSIONS = (
    "accuracy", "completeness", "consistency", "scalability",
    "timeliness", "provenance", "readability", "licensing",
)
RULES = ("R1_date_order", "R2_duplicate_label", "R3_language_mismatch", "R4_format_mismatch")
MEASURES = ("jaccard", "cosine")

PROBE_TIMEOUT_ENV = "DCATQ_PROBE_TIMEOUT_MS"

# each requirement is a list of alternatives; one non-empty value satisfies it
DEFAULT_REQUIRED_ATTRIBUTES = {
    "catalog": [["title"], ["description"], ["publisher"]],
    "dataset": [["title"], ["description"], ["publisher"], ["issued", "modified"]],
    "distribution": [["access_url", "download_url"], ["format", "media_type"]],
}
DEFAULT_REQUIRED_RELATIONSHIPS = [["dataset", "distribution"]]


def _default_probe_timeout() -> int:
    raw = os.environ.get(PROBE_TIMEOUT_ENV)
    if raw is None:
        return 10_000
    try:
        value = int(raw)
    except ValueError:
        raise ConfigSchemaError(PROBE_TIMEOUT_ENV, f"{PROBE_TIMEOUT_ENV} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigSchemaError(PROBE_TIMEOUT_ENV, f"{PROBE_TIMEOUT_ENV} must be positive")
    return value


@dataclass(frozen=True)
class QualityConfig:
    alpha: float = 0.5
    availability_threshold_ms: int = 5000
    freshness_reference: str | None = None
    max_staleness_days: int | None = None
    required_attributes: dict = field(default_factory=lambda: json.loads(json.dumps(DEFAULT_REQUIRED_ATTRIBUTES)))
    required_relationships: list = field(default_factory=lambda: [list(r) for r in DEFAULT_REQUIRED_RELATIONSHIPS])
    consistency_rules: list = field(default_factory=lambda: list(RULES))
    similarity_measure: str = "jaccard"
    similarity_fields: list = field(default_factory=lambda: ["title", "description"])
    pairing_floor: float = 0.0
    scalability_sizes: list = field(default_factory=lambda: [250, 500, 1000, 2000, 4000])
    scalability_ratio_limit: float = 1.5
    scalability_repeats: int = 3
    probe_timeout_ms: int = field(default_factory=_default_probe_timeout)
    probe_max_in_flight: int = 8
    probe_retries: int = 1
    dimensions: list = field(default_factory=lambda: list(DIMENSIONS))

    def __post_init__(self):
        validate(self)

    def to_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    def with_overrides(self, **changes) -> QualityConfig:
        return replace(self, **changes)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate(cfg: QualityConfig) -> None:
    from .ingest.vocab import CANONICAL_NAMES

    if not _is_number(cfg.alpha) or not 0 <= cfg.alpha <= 1:
        raise ConfigSchemaError("alpha", f"alpha must be in [0, 1], got {cfg.alpha!r}")
    if not _is_int(cfg.availability_threshold_ms) or cfg.availability_threshold_ms <= 0:
        raise ConfigSchemaError("availability_threshold_ms", "availability_threshold_ms must be a positive integer")
    if cfg.freshness_reference is not None:
        from .timeutil import parse_timestamp

        if not isinstance(cfg.freshness_reference, str) or parse_timestamp(cfg.freshness_reference) is None:
            raise ConfigSchemaError("freshness_reference", "freshness_reference must be an ISO-8601 timestamp")
    if cfg.max_staleness_days is not None and (not _is_int(cfg.max_staleness_days) or cfg.max_staleness_days < 0):
        raise ConfigSchemaError("max_staleness_days", "max_staleness_days must be a non-negative integer or null")

    if not isinstance(cfg.required_attributes, dict):
        raise ConfigSchemaError("required_attributes", "required_attributes must be an object")
    for kind, groups in cfg.required_attributes.items():
        if kind not in ("catalog", "dataset", "distribution"):
            raise ConfigSchemaError("required_attributes", f"unknown entity kind {kind!r}")
        if not isinstance(groups, list):
            raise ConfigSchemaError("required_attributes", f"requirements for {kind} must be a list")
        for group in groups:
            alts = [group] if isinstance(group, str) else group
            if not isinstance(alts, list) or not alts or any(a not in CANONICAL_NAMES for a in alts):
                raise ConfigSchemaError("required_attributes", f"bad requirement {group!r} for {kind}")
    for pair in cfg.required_relationships:
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or pair[0] not in ("catalog", "dataset", "distribution")):
            raise ConfigSchemaError("required_relationships", f"bad relationship requirement {pair!r}")

    if not isinstance(cfg.consistency_rules, list) or any(r not in RULES for r in cfg.consistency_rules):
        raise ConfigSchemaError("consistency_rules", f"rules must be drawn from {list(RULES)}")
    if cfg.similarity_measure not in MEASURES:
        raise ConfigSchemaError("similarity_measure", f"similarity_measure must be one of {list(MEASURES)}")
    if not cfg.similarity_fields or any(f not in CANONICAL_NAMES for f in cfg.similarity_fields):
        raise ConfigSchemaError("similarity_fields", "similarity_fields must be canonical property names")
    if not _is_number(cfg.pairing_floor) or not 0 <= cfg.pairing_floor <= 1:
        raise ConfigSchemaError("pairing_floor", "pairing_floor must be in [0, 1]")

    sizes = cfg.scalability_sizes
    if (not isinstance(sizes, list) or len(sizes) < 3 or any(not _is_int(n) or n <= 0 for n in sizes)
            or any(a >= b for a, b in zip(sizes, sizes[1:]))):
        raise ConfigSchemaError("scalability_sizes", "scalability_sizes must be >= 3 strictly ascending positive integers")
    if not _is_number(cfg.scalability_ratio_limit) or cfg.scalability_ratio_limit <= 1:
        raise ConfigSchemaError("scalability_ratio_limit", "scalability_ratio_limit must be > 1")
    if not _is_int(cfg.scalability_repeats) or cfg.scalability_repeats < 1:
        raise ConfigSchemaError("scalability_repeats", "scalability_repeats must be a positive integer")

    for key in ("probe_timeout_ms", "probe_max_in_flight"):
        value = getattr(cfg, key)
        if not _is_int(value) or value < 1:
            raise ConfigSchemaError(key, f"{key} must be a positive integer")
    if not _is_int(cfg.probe_retries) or cfg.probe_retries < 0:
        raise ConfigSchemaError("probe_retries", "probe_retries must be a non-negative integer")
    if not cfg.dimensions or any(d not in DIMENSIONS for d in cfg.dimensions):
        raise ConfigSchemaError("dimensions", f"dimensions must be drawn from {list(DIMENSIONS)}")


def load_config(path: str | Path | None = None) -> QualityConfig:
    """Documented defaults, overridden by the keys of a JSON config file."""
    if path is None:
        return QualityConfig()
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigSchemaError("<file>", f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigSchemaError("<file>", "config must be a JSON object")
    known = {f.name for f in fields(QualityConfig)}
    raw.pop("schema_version", None)
    for key in raw:
        if key not in known:
            raise ConfigSchemaError(key, f"unknown config key {key!r}")
    return QualityConfig(**raw)
