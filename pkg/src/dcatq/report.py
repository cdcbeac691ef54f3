"""Assessment orchestration and the report records."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import datetime

from .config import DIMENSIONS, QualityConfig
from .errors import NoWords
from .ingest.catalog import CatalogModel
from .metrics import core, cross, noncore
from .metrics.results import DimensionScore, Finding
from .probe import FixtureStore
from .timeutil import format_timestamp, parse_timestamp, utc_now

log = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
PROBE_DIMENSIONS = ("accuracy", "timeliness")


@dataclass
class QualityReport:
    catalog_source: str
    assessed_at: str
    config_digest: str
    dimensions: dict[str, DimensionScore]
    findings: list[Finding]
    entity_counts: dict[str, int]
    skipped_dimensions: list[str] = field(default_factory=list)
    schema_version: int = REPORT_SCHEMA_VERSION
    # raw timings for figures; not serialized so JSON stays byte-stable
    scalability_samples: list = field(default_factory=list, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "kind": "quality_report",
            "catalog_source": self.catalog_source,
            "assessed_at": self.assessed_at,
            "config_digest": self.config_digest,
            "dimensions": {k: v.to_dict() for k, v in self.dimensions.items()},
            "findings": [f.to_dict() for f in self.findings],
            "entity_counts": dict(self.entity_counts),
            "skipped_dimensions": list(self.skipped_dimensions),
        }

    @classmethod
    def from_dict(cls, data: dict) -> QualityReport:
        dims = {k: DimensionScore.from_dict(v) for k, v in data["dimensions"].items()}
        ordered = {k: dims[k] for k in DIMENSIONS if k in dims}
        return cls(
            catalog_source=data["catalog_source"],
            assessed_at=data["assessed_at"],
            config_digest=data["config_digest"],
            dimensions=ordered,
            findings=[Finding.from_dict(f) for f in data["findings"]],
            entity_counts=dict(data["entity_counts"]),
            skipped_dimensions=list(data.get("skipped_dimensions", [])),
            schema_version=data.get("schema_version", REPORT_SCHEMA_VERSION),
        )


@dataclass
class ComparisonReport:
    sources: tuple[str, str]
    compatibility_forward: float
    compatibility_backward: float
    similarity: float
    measure: str
    key_counts: tuple[int, int]
    shared_keys: int
    pairing: dict
    advisories: list[Finding]
    config_digest: str
    schema_version: int = REPORT_SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "kind": "comparison_report",
            "sources": list(self.sources),
            "compatibility_forward": self.compatibility_forward,
            "compatibility_backward": self.compatibility_backward,
            "similarity": self.similarity,
            "measure": self.measure,
            "key_counts": list(self.key_counts),
            "shared_keys": self.shared_keys,
            "pairing": self.pairing,
            "advisories": [f.to_dict() for f in self.advisories],
            "config_digest": self.config_digest,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ComparisonReport:
        return cls(
            sources=tuple(data["sources"]),
            compatibility_forward=data["compatibility_forward"],
            compatibility_backward=data["compatibility_backward"],
            similarity=data["similarity"],
            measure=data["measure"],
            key_counts=tuple(data["key_counts"]),
            shared_keys=data["shared_keys"],
            pairing=data["pairing"],
            advisories=[Finding.from_dict(f) for f in data["advisories"]],
            config_digest=data["config_digest"],
            schema_version=data.get("schema_version", REPORT_SCHEMA_VERSION),
        )


def reference_time(config: QualityConfig, probes) -> datetime:
    """Configured reference, else the fixture recording time, else the clock."""
    if config.freshness_reference:
        return parse_timestamp(config.freshness_reference)
    if isinstance(probes, FixtureStore) and probes.recorded_at:
        return parse_timestamp(probes.recorded_at)
    return utc_now()


def _accuracy(model, probes, config) -> DimensionScore:
    attr, attr_findings = core.attribute_accuracy_details(model, probes)
    rel, rel_findings = core.relationship_accuracy_details(model)
    value = core.combine_accuracy(attr, rel, config.alpha)
    return DimensionScore("accuracy", value=value, details=attr_findings + rel_findings, extra={
        "attribute_accuracy": attr,
        "relationship_accuracy": rel,
        "alpha": config.alpha,
        "attributes": sum(1 for _ in model.attributes()),
        "relationships": len(model.relationships),
    })


def _completeness(model, probes, config) -> DimensionScore:
    value, findings, extra = core.completeness_details(model, config)
    return DimensionScore("completeness", value=value, details=findings, extra=extra)


def _consistency(model, probes, config) -> DimensionScore:
    notes = []
    if probes is None and "R4_format_mismatch" in config.consistency_rules:
        rules = [r for r in config.consistency_rules if r != "R4_format_mismatch"]
        config = config.with_overrides(consistency_rules=rules)
        notes.append(Finding(model.catalog_node or next(iter(model.entities)), "rule_disabled",
                             "R4_format_mismatch needs probe results", severity="warning"))
    value, violations = core.consistency(model, config, probes)
    return DimensionScore("consistency", value=value, details=core.violation_findings(violations) + notes, extra={
        "rules": list(config.consistency_rules),
        "violations": [v.to_dict() for v in violations],
        "inconsistent_entities": len({v.entity for v in violations}),
        "entities": len(model.entities),
    })


def _scalability(model, probes, config, include_timings=False):
    verdict, samples = core.scalability_probe(model, config)
    extra = {"sizes": list(config.scalability_sizes), "ratio_limit": config.scalability_ratio_limit,
             "operation": "completeness_scan"}
    if include_timings:
        extra["samples"] = [s.to_dict() for s in samples]
        extra["ratio"] = float(samples[-1].per_record / samples[0].per_record) if samples[0].elapsed_ns else None
    details = []
    if not verdict:
        details.append(Finding(model.catalog_node or next(iter(model.entities)), "scalability_failed",
                               "per-record time grew beyond the ratio limit"))
    return DimensionScore("scalability", verdict=verdict, details=details, extra=extra), samples


def _timeliness(model, probes, config, now) -> DimensionScore:
    result = core.timeliness(model, probes, config, now)
    return DimensionScore("timeliness", verdict=result.verdict, details=result.findings, extra={
        "freshness": result.freshness,
        "availability": result.availability,
        "reference_time": result.reference_time,
        "threshold_ms": config.availability_threshold_ms,
        "checked_urls": result.checked_urls,
    })


def _provenance(model, probes, config) -> DimensionScore:
    indicators = noncore.provenance_indicators(model)
    counts = {name: sum(getattr(ind, name) for ind in indicators.values()) for name in noncore.INDICATORS}
    return DimensionScore("provenance", value=noncore.provenance_score(model),
                          extra={"datasets": len(indicators), "indicator_counts": counts})


def _readability(model, probes, config) -> DimensionScore:
    value, graded, skipped = noncore.readability_details(model)
    details = [Finding(ds, "no_text", "no countable words", severity="warning") for ds in skipped]
    return DimensionScore("readability", value=value, details=details,
                          extra={"datasets_graded": len(graded), "grades": {k: v.grade for k, v in graded.items()}})


def _licensing(model, probes, config) -> DimensionScore:
    flags = noncore.licensed_datasets(model)
    details = [Finding(ds, "no_license", "no license or rights statement", severity="warning")
               for ds, ok in flags.items() if not ok]
    return DimensionScore("licensing", value=noncore.licensing(model), details=details,
                          extra={"licensed": sum(flags.values()), "datasets": len(flags)})


def assess(model: CatalogModel, config: QualityConfig, probes=None, source: str = "<memory>",
           include_timings: bool = False, now: datetime | None = None) -> QualityReport:
    """Compute every enabled dimension.

    ``probes`` maps URL -> ProbeResult (live results or a FixtureStore). With
    ``probes=None`` the probe-dependent dimensions are skipped and rule R4
    is disabled, each with a warning finding.
    """
    now = now or reference_time(config, probes)
    samples = []
    dims: dict[str, DimensionScore] = {}
    skipped, notes = [], []
    node = model.catalog_node or next(iter(model.entities))
    for dim in DIMENSIONS:
        if dim not in config.dimensions:
            continue
        if probes is None and dim in PROBE_DIMENSIONS:
            skipped.append(dim)
            notes.append(Finding(node, "probing_skipped", f"{dim} skipped: no network and no fixtures",
                                 severity="warning"))
            log.warning("%s skipped: no network and no fixtures", dim)
            continue
        if dim == "accuracy":
            dims[dim] = _accuracy(model, probes, config)
        elif dim == "completeness":
            dims[dim] = _completeness(model, probes, config)
        elif dim == "consistency":
            dims[dim] = _consistency(model, probes, config)
        elif dim == "scalability":
            dims[dim], samples = _scalability(model, probes, config, include_timings)
        elif dim == "timeliness":
            dims[dim] = _timeliness(model, probes, config, now)
        elif dim == "provenance":
            dims[dim] = _provenance(model, probes, config)
        elif dim == "readability":
            try:
                dims[dim] = _readability(model, probes, config)
            except NoWords:
                skipped.append(dim)
                notes.append(Finding(node, "no_text", "readability skipped: no dataset has countable words",
                                     severity="warning"))
        elif dim == "licensing":
            dims[dim] = _licensing(model, probes, config)
    findings = [f for d in dims.values() for f in d.details] + notes
    return QualityReport(
        catalog_source=source,
        assessed_at=format_timestamp(now),
        config_digest=config.digest(),
        dimensions=dims,
        findings=findings,
        entity_counts=model.entity_counts(),
        skipped_dimensions=skipped,
        scalability_samples=samples,
    )


def compare(c1: CatalogModel, c2: CatalogModel, config: QualityConfig,
            sources: tuple[str, str] = ("<first>", "<second>")) -> ComparisonReport:
    k1, k2 = cross.dataset_keys(c1), cross.dataset_keys(c2)
    forward = cross.compatibility(c1, c2)
    backward = cross.compatibility(c2, c1)
    fields = tuple(config.similarity_fields)
    pairing = cross.pair_objects(c1, c2, config.similarity_measure, config.pairing_floor, fields)
    return ComparisonReport(
        sources=tuple(sources),
        compatibility_forward=forward,
        compatibility_backward=backward,
        similarity=cross.similarity_from_pairing(pairing),
        measure=config.similarity_measure,
        key_counts=(len(k1), len(k2)),
        shared_keys=len(k1 & k2),
        pairing=pairing.to_dict(),
        advisories=cross.advisories(c1, c2, tuple(sources)),
        config_digest=config.digest(),
    )
