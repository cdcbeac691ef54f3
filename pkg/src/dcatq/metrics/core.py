"""Core dimensions: accuracy, completeness, consistency, scalability, timeliness.

Every function is a pure function of the model, the config and a probe
lookup (``url -> ProbeResult``), except the scalability harness, which
measures wall-clock time.
"""

from __future__ import annotations

import gc
import statistics
import time
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Callable
from urllib.parse import urlparse

from ..config import QualityConfig
from ..errors import EmptyCatalog, InsufficientData, ProbeMissing
from ..ingest.catalog import (
    AttributeOccurrence,
    CatalogModel,
    Entity,
    EntityKind,
    RelationshipInstance,
    make_model,
)
from ..ingest.vocab import DATE_PROPERTIES, URL_PROPERTIES
from ..probe import ProbeResult, is_probeable
from ..timeutil import format_timestamp, parse_timestamp
from .formats import family_of_content_type, family_of_declared
from .langid import detect_language, language_code
from .results import ConsistencyViolation, Finding, ScalabilitySample

Probes = Mapping[str, ProbeResult]


def normalize_label(text: str) -> str:
    return " ".join(text.lower().split())


def _percent(good: int, total: int) -> float:
    return 100.0 * good / total


def _lookup(probes: Probes | None, url: str) -> ProbeResult:
    key = url.strip()
    if probes is None or key not in probes:
        raise ProbeMissing(key)
    return probes[key]


# -- accuracy -----------------------------------------------------------------

def _attribute_check(attr: AttributeOccurrence, probes: Probes | None) -> tuple[float, Finding | None]:
    prop = attr.property.name
    if attr.is_empty():
        return 1.0, Finding(attr.owner, "empty_value", f"{prop} is empty", property=prop)
    if prop in DATE_PROPERTIES and parse_timestamp(attr.text) is None:
        return 1.0, Finding(attr.owner, "malformed_date", f"{prop} {attr.text!r} is not ISO-8601", property=prop)
    if prop in URL_PROPERTIES:
        url = attr.text.strip()
        parsed = urlparse(url)
        if not parsed.scheme or not (parsed.netloc or parsed.path):
            return 1.0, Finding(attr.owner, "malformed_url", f"{prop} {url!r} is not a URL", property=prop)
        if not is_probeable(url):
            return 0.0, Finding(attr.owner, "unverifiable_url", f"{prop} {url} cannot be probed",
                                severity="warning", property=prop)
        result = _lookup(probes, url)
        if not result.ok:
            status = f"status {result.status_code}" if result.status_code is not None else result.outcome
            return 1.0, Finding(attr.owner, "broken_link", f"{prop} {url} failed ({status})", property=prop)
    return 0.0, None


def attribute_error(attr: AttributeOccurrence, probes: Probes | None) -> float:
    """1.0 for an empty value, a malformed date or a broken link, else 0.0."""
    return _attribute_check(attr, probes)[0]


def attribute_accuracy_details(model: CatalogModel, probes: Probes | None) -> tuple[float, list[Finding]]:
    errors = 0
    findings = []
    m = 0
    for attr in model.attributes():
        m += 1
        err, finding = _attribute_check(attr, probes)
        errors += int(err)
        if finding is not None:
            findings.append(finding)
    if m == 0:
        raise EmptyCatalog("catalog has no attribute values")
    return _percent(m - errors, m), findings


def attribute_level_accuracy(model: CatalogModel, probes: Probes | None) -> float:
    return attribute_accuracy_details(model, probes)[0]


def _content_signature(entity: Entity) -> tuple | None:
    titles = tuple(sorted(normalize_label(t) for t in entity.texts("title")))
    descriptions = tuple(sorted(normalize_label(t) for t in entity.texts("description")))
    if not any(titles) and not any(descriptions):
        return None
    return titles, descriptions


def _relationship_checks(model: CatalogModel) -> list[tuple[RelationshipInstance, Finding | None]]:
    seen_keys = set()
    seen_content: dict[str, set] = defaultdict(set)
    seen_targets: dict[str, set] = defaultdict(set)
    out = []
    for rel in model.relationships:
        finding = None
        target = model.entities.get(rel.target)
        if target is None:
            finding = Finding(rel.source, "dangling_reference",
                              f"{rel.predicate.key} -> {rel.target} is not described in the catalog")
        elif rel.key in seen_keys:
            finding = Finding(rel.source, "duplicate_relationship",
                              f"{rel.predicate.key} -> {rel.target} declared twice")
        else:
            signature = _content_signature(target)
            if (signature is not None and rel.target not in seen_targets[rel.source]
                    and signature in seen_content[rel.source]):
                finding = Finding(rel.source, "duplicate_information",
                                  f"{rel.target} repeats the title/description of a sibling")
            if signature is not None:
                seen_content[rel.source].add(signature)
            seen_targets[rel.source].add(rel.target)
        seen_keys.add(rel.key)
        out.append((rel, finding))
    return out


def relationship_error(rel: RelationshipInstance, model: CatalogModel) -> float:
    """1.0 for a dangling, repeated or content-duplicating relationship, else 0.0."""
    for candidate, finding in _relationship_checks(model):
        if candidate is rel or candidate == rel:
            return 0.0 if finding is None else 1.0
    raise ValueError("relationship is not part of the model")


def relationship_accuracy_details(model: CatalogModel) -> tuple[float, list[Finding]]:
    checks = _relationship_checks(model)
    if not checks:
        node = model.catalog_node or next(iter(model.entities))
        return 100.0, [Finding(node, "no_relationships", "no relationships declared", severity="warning")]
    findings = [f for _, f in checks if f is not None]
    return _percent(len(checks) - len(findings), len(checks)), findings


def relationship_level_accuracy(model: CatalogModel) -> float:
    return relationship_accuracy_details(model)[0]


def combine_accuracy(attr_accuracy: float, rel_accuracy: float, alpha: float) -> float:
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return alpha * attr_accuracy + (1 - alpha) * rel_accuracy


def overall_accuracy(model: CatalogModel, probes: Probes | None, alpha: float = 0.5) -> float:
    return combine_accuracy(attribute_level_accuracy(model, probes), relationship_level_accuracy(model), alpha)


# -- completeness ---------------------------------------------------------------

def _groups(config: QualityConfig, kind: EntityKind) -> list[tuple[str, ...]]:
    raw = config.required_attributes.get(kind.value, [])
    return [(g,) if isinstance(g, str) else tuple(g) for g in raw]


def completeness_details(model: CatalogModel, config: QualityConfig) -> tuple[float, list[Finding], dict]:
    groups = {kind: _groups(config, kind) for kind in EntityKind}
    rel_reqs = defaultdict(list)
    for kind, predicate in config.required_relationships:
        rel_reqs[EntityKind(kind)].append(predicate)

    satisfied = total = 0
    findings = []
    for ent in model.entities.values():
        for alternatives in groups[ent.kind]:
            total += 1
            if ent.has_value(*alternatives):
                satisfied += 1
            else:
                name = "|".join(alternatives)
                findings.append(Finding(ent.id, "missing_attribute", f"{ent.kind.value} lacks {name}",
                                        property=alternatives[0]))
        for predicate in rel_reqs[ent.kind]:
            total += 1
            if model.outgoing(ent.id, predicate):
                satisfied += 1
            else:
                findings.append(Finding(ent.id, "missing_relationship",
                                        f"{ent.kind.value} has no {predicate} link", property=predicate))
    if total == 0:
        raise EmptyCatalog("no required attributes apply to this catalog")
    return _percent(satisfied, total), findings, {"satisfied_pairs": satisfied, "required_pairs": total}


def completeness(model: CatalogModel, config: QualityConfig) -> float:
    return completeness_details(model, config)[0]


# -- consistency ----------------------------------------------------------------

def _rule_date_order(ent: Entity) -> list[ConsistencyViolation]:
    issued = [(a, parse_timestamp(a.text)) for a in ent.values("issued")]
    modified = [(a, parse_timestamp(a.text)) for a in ent.values("modified")]
    out = []
    for m_attr, m_ts in modified:
        for i_attr, i_ts in issued:
            if m_ts is not None and i_ts is not None and m_ts < i_ts:
                out.append(ConsistencyViolation(ent.id, "R1_date_order", (i_attr.triple, m_attr.triple)))
    return out[:1]


def _rule_duplicate_labels(model: CatalogModel) -> dict[str, list[ConsistencyViolation]]:
    groups = defaultdict(list)
    for ent in model.entities.values():
        for attr in ent.values("identifier", "title"):
            label = normalize_label(attr.text)
            if label:
                groups[(ent.kind, attr.property.name, label)].append((ent.id, attr))
    out: dict[str, list[ConsistencyViolation]] = defaultdict(list)
    for members in groups.values():
        owners = {owner for owner, _ in members}
        if len(owners) < 2:
            continue
        for owner in sorted(owners):
            triples = tuple(a.triple for o, a in members if o == owner)
            if not out[owner]:
                out[owner].append(ConsistencyViolation(owner, "R2_duplicate_label", triples))
    return out


def _rule_language(ent: Entity) -> list[ConsistencyViolation]:
    texts = ent.values("title", "description")
    for attr in texts:
        if not attr.value.language:
            continue
        declared = language_code(attr.value.language)
        if declared is None:
            continue
        detected = detect_language(attr.text)
        if detected is not None and detected != declared:
            return [ConsistencyViolation(ent.id, "R3_language_mismatch", (attr.triple,))]

    untagged = [a for a in texts if not a.value.language and not a.is_empty()]
    declared_attrs = ent.values("language")
    declared = {language_code(a.text) for a in declared_attrs} - {None}
    if untagged and declared:
        detected = detect_language(" ".join(a.text for a in untagged))
        if detected is not None and detected not in declared:
            triples = tuple(a.triple for a in declared_attrs) + tuple(a.triple for a in untagged)
            return [ConsistencyViolation(ent.id, "R3_language_mismatch", triples)]
    return []


def _rule_format(ent: Entity, probes: Probes | None) -> list[ConsistencyViolation]:
    declared = [(a, family_of_declared(a.text)) for a in ent.values("media_type", "format")]
    declared = [(a, fam) for a, fam in declared if fam is not None]
    if not declared:
        return []
    urls = ent.values("download_url") or ent.values("access_url")
    for url_attr in urls:
        url = url_attr.text.strip()
        if not is_probeable(url):
            continue
        result = _lookup(probes, url)
        served = family_of_content_type(result.content_type) if result.ok else None
        if served is None:
            continue
        for attr, fam in declared:
            if fam != served:
                return [ConsistencyViolation(ent.id, "R4_format_mismatch", (attr.triple, url_attr.triple))]
    return []


_MESSAGES = {
    "R1_date_order": "modified is earlier than issued",
    "R2_duplicate_label": "identifier or title duplicated in another entity",
    "R3_language_mismatch": "declared language does not match the text",
    "R4_format_mismatch": "declared format does not match the served content type",
}


def consistency_violations(model: CatalogModel, config: QualityConfig,
                           probes: Probes | None = None) -> list[ConsistencyViolation]:
    rules = set(config.consistency_rules)
    duplicates = _rule_duplicate_labels(model) if "R2_duplicate_label" in rules else {}
    violations = []
    for ent in model.entities.values():
        if "R1_date_order" in rules:
            violations += _rule_date_order(ent)
        violations += duplicates.get(ent.id, [])
        if "R3_language_mismatch" in rules:
            violations += _rule_language(ent)
        if "R4_format_mismatch" in rules:
            violations += _rule_format(ent, probes)
    return violations


def consistency(model: CatalogModel, config: QualityConfig,
                probes: Probes | None = None) -> tuple[float, list[ConsistencyViolation]]:
    """Share of entities with no rule violation, and the violations found."""
    violations = consistency_violations(model, config, probes)
    bad = {v.entity for v in violations}
    return _percent(len(model.entities) - len(bad), len(model.entities)), violations


def violation_findings(violations: list[ConsistencyViolation]) -> list[Finding]:
    return [v.to_finding(_MESSAGES[v.rule]) for v in violations]


# -- scalability ----------------------------------------------------------------

def replicate(model: CatalogModel, n_records: int) -> CatalogModel:
    """A catalog with ``n_records`` datasets cloned round-robin from ``model``.

    Each clone gets fresh ids for itself and its distributions; catalog
    entities are kept once.
    """
    datasets = model.datasets
    if not datasets:
        raise InsufficientData("no datasets to replicate")
    entities: list[Entity] = [e for e in model.entities.values() if e.kind == EntityKind.CATALOG]
    rels: list[RelationshipInstance] = []

    def clone(ent: Entity, new_id: str) -> Entity:
        attrs = tuple(AttributeOccurrence(new_id, a.property, a.value, a.triple) for a in ent.attributes)
        return Entity(new_id, ent.kind, attrs)

    for i in range(n_records):
        src = datasets[i % len(datasets)]
        ds_id = f"{src.id}#copy{i}"
        entities.append(clone(src, ds_id))
        for rel in model.outgoing(src.id):
            target = model.entities.get(rel.target)
            if target is not None and target.kind == EntityKind.DISTRIBUTION:
                dist_id = f"{rel.target}#copy{i}"
                entities.append(clone(target, dist_id))
                rels.append(RelationshipInstance(ds_id, rel.predicate, dist_id, rel.triple))
            else:
                rels.append(RelationshipInstance(ds_id, rel.predicate, rel.target, rel.triple))
    return make_model(entities, rels)


def _completeness_scan(model: CatalogModel, config: QualityConfig) -> None:
    completeness(model, config)


def time_operation(operation: Callable, model: CatalogModel, config: QualityConfig, repeats: int,
                   clock: Callable[[], int] = time.perf_counter_ns) -> int:
    """Median elapsed nanoseconds over ``repeats`` runs, with the GC paused."""
    return int(statistics.median_low(_timed_runs([(operation, model)], config, repeats, clock)[0]))


def _timed_runs(jobs: list[tuple[Callable, CatalogModel]], config: QualityConfig, repeats: int,
                clock: Callable[[], int]) -> list[list[int]]:
    # round-robin over the jobs so a slow spell on the host hits every size alike
    times: list[list[int]] = [[] for _ in jobs]
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeats):
            for slot, (operation, model) in enumerate(jobs):
                start = clock()
                operation(model, config)
                times[slot].append(clock() - start)
    finally:
        if was_enabled:
            gc.enable()
    return times


def scalability_verdict(samples: list[ScalabilitySample], ratio_limit: float) -> bool:
    smallest = min(samples, key=lambda s: s.n_records)
    largest = max(samples, key=lambda s: s.n_records)
    return largest.per_record <= smallest.per_record * ratio_limit


def scalability_probe(model: CatalogModel, config: QualityConfig, operation: Callable | None = None,
                      clock: Callable[[], int] = time.perf_counter_ns) -> tuple[bool, list[ScalabilitySample]]:
    """Time ``operation`` (default: a completeness scan) on catalogs scaled to each size.

    Each size gets one untimed warm-up run, then ``scalability_repeats``
    timed runs taken round-robin across sizes; the median per size is kept.
    Verdict: per-record time at the largest size stays within
    ``scalability_ratio_limit`` times the per-record time at the smallest.
    Must not run concurrently with other timed work.
    """
    if not model.datasets:
        raise InsufficientData("no datasets to replicate")
    sizes = config.scalability_sizes
    if len(sizes) < 3 or any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise ValueError("scalability_sizes must be >= 3 strictly ascending sizes")
    operation = operation or _completeness_scan
    scaled = [replicate(model, n) for n in sizes]
    for m in scaled:
        operation(m, config)
    times = _timed_runs([(operation, m) for m in scaled], config, config.scalability_repeats, clock)
    samples = [ScalabilitySample(n, int(statistics.median_low(t))) for n, t in zip(sizes, times)]
    return scalability_verdict(samples, config.scalability_ratio_limit), samples


# -- timeliness -----------------------------------------------------------------

@dataclass
class TimelinessResult:
    verdict: bool
    freshness: bool
    availability: bool
    findings: list[Finding] = field(default_factory=list)
    reference_time: str | None = None
    checked_urls: int = 0


def freshness(model: CatalogModel, now: datetime, max_staleness_days: int | None = None) -> tuple[bool, list[Finding]]:
    """True when at least one issued/modified stamp exists and all parse and precede ``now``."""
    findings = []
    dated = 0
    for attr in model.attributes():
        if attr.property.name not in DATE_PROPERTIES:
            continue
        dated += 1
        prop = attr.property.name
        ts = parse_timestamp(attr.text)
        if ts is None:
            findings.append(Finding(attr.owner, "unparseable_timestamp", f"{prop} {attr.text!r} does not parse",
                                    property=prop))
        elif not ts < now:
            findings.append(Finding(attr.owner, "future_timestamp",
                                    f"{prop} {attr.text} is not before {format_timestamp(now)}", property=prop))
        elif max_staleness_days is not None and prop == "modified" and now - ts > timedelta(days=max_staleness_days):
            findings.append(Finding(attr.owner, "stale_timestamp",
                                    f"{prop} {attr.text} is older than {max_staleness_days} days", property=prop))
    if dated == 0:
        node = model.catalog_node or next(iter(model.entities))
        findings.append(Finding(node, "no_timestamps", "no issued/modified values to check"))
    return not findings, findings


def availability_urls(model: CatalogModel) -> list[tuple[str, str]]:
    """(entity id, url) for every probeable access/download URL."""
    out = []
    for attr in model.attributes():
        if attr.property.name in ("access_url", "download_url") and is_probeable(attr.text):
            out.append((attr.owner, attr.text.strip()))
    return out


def availability(model: CatalogModel, probes: Probes | None, threshold_ms: int) -> tuple[bool, list[Finding]]:
    findings = []
    urls = availability_urls(model)
    for owner, url in urls:
        result = _lookup(probes, url)
        if not result.ok:
            findings.append(Finding(owner, "failed_probe", f"{url} {result.outcome}"
                                    + (f" (status {result.status_code})" if result.status_code else "")))
        elif result.response_ms > threshold_ms:
            findings.append(Finding(owner, "slow_response", f"{url} took {result.response_ms} ms > {threshold_ms} ms"))
    verdict = not findings
    if not urls:
        node = model.catalog_node or next(iter(model.entities))
        findings.append(Finding(node, "no_probed_urls", "no access/download URLs to probe", severity="warning"))
    return verdict, findings


def timeliness(model: CatalogModel, probes: Probes | None, config: QualityConfig,
               now: datetime) -> TimelinessResult:
    fresh, fresh_findings = freshness(model, now, config.max_staleness_days)
    avail, avail_findings = availability(model, probes, config.availability_threshold_ms)
    return TimelinessResult(fresh and avail, fresh, avail, fresh_findings + avail_findings,
                            format_timestamp(now), len(availability_urls(model)))
