"""Non-core dimensions: provenance, readability (Flesch-Kincaid grade) and licensing."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import EmptyCatalog, NoWords
from ..ingest.catalog import CatalogModel, Entity

PROV = "http://www.w3.org/ns/prov#"
PROV_GENERATED = PROV + "wasGeneratedBy"
ACTIVITY_DESCRIPTIONS = frozenset({
    "http://purl.org/dc/terms/description",
    "http://purl.org/dc/terms/title",
    "http://www.w3.org/2000/01/rdf-schema#comment",
    "http://www.w3.org/2000/01/rdf-schema#label",
})

INDICATORS = (
    "has_lineage_info", "has_ancestors", "has_descendants",
    "has_provenance_statement", "has_data_source", "has_processing_steps",
)


@dataclass(frozen=True)
class ProvenanceIndicators:
    has_lineage_info: bool = False
    has_ancestors: bool = False
    has_descendants: bool = False
    has_provenance_statement: bool = False
    has_data_source: bool = False
    has_processing_steps: bool = False

    def count(self) -> int:
        return sum(getattr(self, name) for name in INDICATORS)


def _statements(model: CatalogModel, ent: Entity) -> list[tuple[str, str, str]]:
    """(canonical name, raw predicate, object id) for the non-empty statements about ``ent``."""
    out = [(a.property.name, a.property.raw_predicate, a.value.node_id) for a in ent.attributes
           if not a.is_empty()]
    out += [(r.predicate.name, r.predicate.raw_predicate, r.target) for r in model.outgoing(ent.id)]
    return out


def provenance_indicators(model: CatalogModel) -> dict[str, ProvenanceIndicators]:
    """Six presence flags per dataset.

    lineage: dct:provenance; ancestors: prov:wasDerivedFrom or dct:source;
    descendants: another dataset of the catalog is derived from this one;
    provenance statement: prov:wasGeneratedBy; data source: dct:source;
    processing steps: a prov:wasGeneratedBy activity that carries a description.
    """
    described = set()
    if model.triples is not None:
        described = {t.subject.node_id for t in model.triples
                     if t.predicate in ACTIVITY_DESCRIPTIONS and t.object.lexical.strip()}

    statements = {ds.id: _statements(model, ds) for ds in model.datasets}
    derived_targets = {
        obj for ds_id, stmts in statements.items()
        for name, _, obj in stmts if name == "derived_from" and obj != ds_id
    }

    out = {}
    for ds in model.datasets:
        stmts = statements[ds.id]
        names = {name for name, _, _ in stmts}
        generated = [obj for _, raw, obj in stmts if raw == PROV_GENERATED]
        out[ds.id] = ProvenanceIndicators(
            has_lineage_info="provenance" in names,
            has_ancestors=bool(names & {"derived_from", "source"}),
            has_descendants=ds.id in derived_targets,
            has_provenance_statement=bool(generated),
            has_data_source="source" in names,
            has_processing_steps=any(obj in described for obj in generated),
        )
    return out


def provenance_score(model: CatalogModel) -> float:
    """Mean share of the six provenance indicators present per dataset, in percent."""
    indicators = provenance_indicators(model)
    if not indicators:
        raise EmptyCatalog("no datasets")
    return 100.0 * sum(ind.count() for ind in indicators.values()) / (len(INDICATORS) * len(indicators))


# -- readability ------------------------------------------------------------------

_VOWEL_GROUPS = re.compile(r"[aeiouy]+")
_SENTENCE_END = re.compile(r"[.!?]+")
_ALNUM = re.compile(r"[^\W_]", re.UNICODE)


def count_syllables(word: str) -> int:
    """Vowel-group count, less a silent final "e" (but not consonant + "le"); at least 1."""
    letters = "".join(ch for ch in word.lower() if ch.isalpha())
    if not letters:
        return 1
    count = len(_VOWEL_GROUPS.findall(letters))
    if letters.endswith("e"):
        consonant_le = len(letters) >= 3 and letters.endswith("le") and letters[-3] not in "aeiouy"
        if not consonant_le:
            count -= 1
    return max(count, 1)


@dataclass(frozen=True)
class ReadabilityStats:
    words: int
    sentences: int
    syllables: int
    grade: float


def fk_grade(words: int, sentences: int, syllables: int) -> float:
    return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59


def flesch_kincaid(text: str) -> ReadabilityStats:
    words = [w for w in text.split() if _ALNUM.search(w)]
    if not words:
        raise NoWords("text has no countable words")
    sentences = max(1, len(_SENTENCE_END.findall(text)))
    syllables = sum(count_syllables(w) for w in words)
    return ReadabilityStats(len(words), sentences, syllables, fk_grade(len(words), sentences, syllables))


def dataset_text(ds: Entity) -> str:
    return " ".join(ds.texts("title") + ds.texts("description"))


def readability_details(model: CatalogModel) -> tuple[float, dict[str, ReadabilityStats], list[str]]:
    graded, skipped = {}, []
    for ds in model.datasets:
        try:
            graded[ds.id] = flesch_kincaid(dataset_text(ds))
        except NoWords:
            skipped.append(ds.id)
    if not graded:
        raise NoWords("no dataset has a countable title or description")
    return sum(s.grade for s in graded.values()) / len(graded), graded, skipped


def readability(model: CatalogModel) -> float:
    """Mean Flesch-Kincaid grade of title + description over datasets with text."""
    return readability_details(model)[0]


# -- licensing --------------------------------------------------------------------

def licensed_datasets(model: CatalogModel) -> dict[str, bool]:
    out = {}
    for ds in model.datasets:
        carriers = [ds] + model.distributions_of(ds.id)
        out[ds.id] = any(e.has_value("license", "rights") for e in carriers)
    return out


def licensing(model: CatalogModel) -> float:
    flags = licensed_datasets(model)
    if not flags:
        raise EmptyCatalog("no datasets")
    return 100.0 * sum(flags.values()) / len(flags)
