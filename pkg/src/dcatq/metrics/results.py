"""Result records shared by all metric modules."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from ..ingest.terms import Triple

RULE_REGISTRY = {
    # attribute-level accuracy
    "empty_value": "attribute value is empty or whitespace",
    "malformed_date": "issued/modified value is not an ISO-8601 date",
    "malformed_url": "URL-valued attribute is not an absolute URL",
    "broken_link": "URL probe failed (HTTP >= 400, timeout or connection error)",
    "unverifiable_url": "URL uses a scheme that cannot be probed; not counted as an error",
    # relationship-level accuracy
    "dangling_reference": "relationship target has no description in the catalog",
    "duplicate_relationship": "relationship declared more than once",
    "duplicate_information": "sibling targets carry identical title and description",
    "no_relationships": "catalog declares no relationships; score is vacuous",
    # completeness
    "missing_attribute": "required attribute absent or empty",
    "missing_relationship": "required relationship absent",
    # consistency
    "R1_date_order": "modification date earlier than issue date",
    "R2_duplicate_label": "identifier or title shared by two entities of the same kind",
    "R3_language_mismatch": "declared language differs from the language of the text",
    "R4_format_mismatch": "declared format differs from the served content type",
    # timeliness
    "unparseable_timestamp": "issued/modified value cannot be parsed",
    "future_timestamp": "timestamp is not earlier than the reference time",
    "stale_timestamp": "timestamp older than the configured staleness limit",
    "no_timestamps": "catalog carries no issued/modified values",
    "slow_response": "response time above the availability threshold",
    "failed_probe": "URL did not answer successfully",
    "no_probed_urls": "catalog has no probeable access/download URL; availability is vacuous",
    # non-core
    "no_license": "dataset and its distributions carry no license or rights",
    "no_text": "dataset has no countable title/description words",
    # report level
    "probing_skipped": "dimension skipped: no network and no fixtures",
    "rule_disabled": "consistency rule disabled for this run",
    "scalability_failed": "per-record time grew beyond the ratio limit",
    # cross-catalog advisories
    "license_mismatch": "the two catalogs share no license",
    "temporal_disjoint": "declared temporal coverages do not overlap",
    "unkeyed_dataset": "dataset has neither identifier nor title",
}

SEVERITIES = ("error", "warning")


@dataclass(frozen=True)
class Finding:
    entity: str
    rule: str
    message: str
    severity: str = "error"
    property: str | None = None

    def __post_init__(self):
        if self.rule not in RULE_REGISTRY:
            raise ValueError(f"unregistered rule id {self.rule!r}")
        if self.severity not in SEVERITIES:
            raise ValueError(f"bad severity {self.severity!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> Finding:
        return cls(**data)


@dataclass(frozen=True)
class ConsistencyViolation:
    entity: str
    rule: str
    triples_involved: tuple[Triple, ...]

    def __post_init__(self):
        if not self.triples_involved:
            raise ValueError("a violation needs at least one triple")
        if self.rule not in RULE_REGISTRY or not self.rule.startswith("R"):
            raise ValueError(f"not a consistency rule: {self.rule!r}")

    def to_finding(self, message: str) -> Finding:
        return Finding(self.entity, self.rule, message)

    def to_dict(self) -> dict:
        return {"entity": self.entity, "rule": self.rule,
                "triples": [t.n3() for t in self.triples_involved]}


@dataclass(frozen=True)
class ScalabilitySample:
    n_records: int
    elapsed_ns: int

    def __post_init__(self):
        if self.n_records < 1 or self.elapsed_ns < 0:
            raise ValueError("bad scalability sample")

    @property
    def per_record(self) -> Fraction:
        """Nanoseconds per record, exact."""
        return Fraction(self.elapsed_ns, self.n_records)

    def to_dict(self) -> dict:
        return {"n_records": self.n_records, "elapsed_ns": self.elapsed_ns,
                "per_record_ns": float(self.per_record)}


PERCENT_DIMENSIONS = ("accuracy", "completeness", "consistency", "provenance", "licensing")
VERDICT_DIMENSIONS = ("scalability", "timeliness")
GRADE_DIMENSIONS = ("readability",)


@dataclass
class DimensionScore:
    """One dimension: a value (percent or grade) or a boolean verdict, never both."""

    dimension: str
    value: float | None = None
    verdict: bool | None = None
    details: list[Finding] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.value is None) == (self.verdict is None):
            raise ValueError(f"{self.dimension}: exactly one of value/verdict must be set")
        if self.dimension in VERDICT_DIMENSIONS and self.verdict is None:
            raise ValueError(f"{self.dimension} is reported as a verdict")
        if self.dimension in PERCENT_DIMENSIONS + GRADE_DIMENSIONS and self.value is None:
            raise ValueError(f"{self.dimension} is reported as a value")
        if self.dimension in PERCENT_DIMENSIONS and not 0 <= self.value <= 100:
            raise ValueError(f"{self.dimension} percentage out of range: {self.value}")

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "value": self.value,
            "verdict": self.verdict,
            "details": [f.to_dict() for f in self.details],
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, data: dict) -> DimensionScore:
        return cls(
            dimension=data["dimension"],
            value=data.get("value"),
            verdict=data.get("verdict"),
            details=[Finding.from_dict(f) for f in data.get("details", [])],
            extra=data.get("extra", {}),
        )
