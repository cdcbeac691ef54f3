"""Typed catalog view built from a TripleSet."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from ..errors import EmptyCatalog
from .terms import RDF_TYPE, Triple, TripleSet, RdfTerm
from .vocab import CanonicalProperty, normalize_predicate

DCAT = "http://www.w3.org/ns/dcat#"
DCAT_DATASET = DCAT + "dataset"
DCAT_DISTRIBUTION = DCAT + "distribution"


class EntityKind(str, Enum):
    CATALOG = "catalog"
    DATASET = "dataset"
    DISTRIBUTION = "distribution"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {EntityKind.CATALOG: 0, EntityKind.DATASET: 1, EntityKind.DISTRIBUTION: 2}

TYPE_KINDS = {
    DCAT + "Catalog": EntityKind.CATALOG,
    DCAT + "Dataset": EntityKind.DATASET,
    DCAT + "Distribution": EntityKind.DISTRIBUTION,
}

# entity-to-entity links even when the target has no triples of its own
STRUCTURAL_PREDICATES = frozenset({DCAT_DATASET, DCAT_DISTRIBUTION})


@dataclass(frozen=True)
class AttributeOccurrence:
    owner: str
    property: CanonicalProperty
    value: RdfTerm
    triple: Triple

    @property
    def text(self) -> str:
        return self.value.lexical

    def is_empty(self) -> bool:
        return not self.value.lexical.strip()


@dataclass(frozen=True)
class RelationshipInstance:
    source: str
    predicate: CanonicalProperty
    target: str
    triple: Triple

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.source, self.predicate.key, self.target)


@dataclass(frozen=True)
class Entity:
    id: str
    kind: EntityKind
    attributes: tuple[AttributeOccurrence, ...]

    def values(self, *names: str) -> list[AttributeOccurrence]:
        return [a for a in self.attributes if a.property.name in names]

    def texts(self, *names: str) -> list[str]:
        return [a.text for a in self.values(*names)]

    def has_value(self, *names: str) -> bool:
        """True if any of ``names`` carries a non-blank value."""
        return any(not a.is_empty() for a in self.values(*names))


@dataclass(frozen=True)
class CatalogModel:
    """Immutable catalog: entities in (kind, id) order plus declared relationships."""

    catalog_node: str | None
    entities: dict[str, Entity]
    relationships: tuple[RelationshipInstance, ...]
    triple_count: int
    triples: TripleSet | None = field(default=None, compare=False, repr=False)
    _outgoing: dict = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        if not any(e.kind != EntityKind.DISTRIBUTION for e in self.entities.values()):
            raise EmptyCatalog("no dcat:Catalog or dcat:Dataset found")
        for rel in self.relationships:
            if rel.source not in self.entities:
                raise ValueError(f"relationship source {rel.source} is not an entity")
        for ent in self.entities.values():
            for attr in ent.attributes:
                if attr.owner != ent.id:
                    raise ValueError(f"attribute owner {attr.owner} filed under {ent.id}")
        outgoing = defaultdict(list)
        for rel in self.relationships:
            outgoing[rel.source].append(rel)
        object.__setattr__(self, "_outgoing", dict(outgoing))

    def of_kind(self, kind: EntityKind) -> list[Entity]:
        return [e for e in self.entities.values() if e.kind == kind]

    @property
    def datasets(self) -> list[Entity]:
        return self.of_kind(EntityKind.DATASET)

    @property
    def distributions(self) -> list[Entity]:
        return self.of_kind(EntityKind.DISTRIBUTION)

    def attributes(self) -> Iterator[AttributeOccurrence]:
        for ent in self.entities.values():
            yield from ent.attributes

    def outgoing(self, entity_id: str, predicate: str | None = None) -> list[RelationshipInstance]:
        rels = self._outgoing.get(entity_id, [])
        if predicate is None:
            return list(rels)
        return [r for r in rels if r.predicate.key == predicate]

    def distributions_of(self, dataset_id: str) -> list[Entity]:
        out = []
        for rel in self.outgoing(dataset_id, "distribution"):
            ent = self.entities.get(rel.target)
            if ent is not None:
                out.append(ent)
        return out

    def entity_counts(self) -> dict[str, int]:
        counts = {k.value: 0 for k in EntityKind}
        for ent in self.entities.values():
            counts[ent.kind.value] += 1
        return counts


def _classify(triples: TripleSet) -> dict[str, EntityKind]:
    subjects = {t.subject.node_id for t in triples}
    kinds: dict[str, EntityKind] = {}

    def assign(node, kind):
        current = kinds.get(node)
        if current is None or kind.rank < current.rank:
            kinds[node] = kind

    for t in triples:
        if t.predicate == RDF_TYPE and t.object.lexical in TYPE_KINDS and not t.object.is_literal:
            assign(t.subject.node_id, TYPE_KINDS[t.object.lexical])

    explicit = set(kinds)
    inferred: dict[str, EntityKind] = {}
    for t in triples:
        if t.predicate not in STRUCTURAL_PREDICATES:
            continue
        if t.predicate == DCAT_DATASET and t.subject.node_id not in explicit:
            inferred.setdefault(t.subject.node_id, EntityKind.CATALOG)
        target = t.object.node_id
        if t.object.is_literal or target in explicit or target not in subjects:
            continue
        kind = EntityKind.DATASET if t.predicate == DCAT_DATASET else EntityKind.DISTRIBUTION
        if target not in inferred or kind.rank < inferred[target].rank:
            inferred[target] = kind
    kinds.update(inferred)
    return kinds


def build_catalog(triples: TripleSet, mapping: dict[str, str] | None = None) -> CatalogModel:
    """Classify entities and split their statements into attributes and relationships.

    Entities are nodes typed ``dcat:Catalog|Dataset|Distribution``; untyped
    nodes are classified by position (object of ``dcat:dataset`` is a dataset,
    object of ``dcat:distribution`` a distribution, subject of ``dcat:dataset``
    a catalog). A statement whose object is another entity, or which uses
    ``dcat:dataset``/``dcat:distribution``, is a relationship; every other
    non-``rdf:type`` statement about an entity is an attribute.
    """
    kinds = _classify(triples)
    if not any(k != EntityKind.DISTRIBUTION for k in kinds.values()):
        raise EmptyCatalog("no dcat:Catalog or dcat:Dataset found")

    order = sorted(kinds, key=lambda node: (kinds[node].rank, node))
    attrs: dict[str, list[AttributeOccurrence]] = {node: [] for node in order}
    rels: list[RelationshipInstance] = []
    for t in triples:
        owner = t.subject.node_id
        if owner not in kinds or t.predicate == RDF_TYPE:
            continue
        prop = normalize_predicate(t.predicate, mapping)
        if not t.object.is_literal and (
            t.predicate in STRUCTURAL_PREDICATES or t.object.node_id in kinds
        ):
            rels.append(RelationshipInstance(owner, prop, t.object.node_id, t))
        else:
            attrs[owner].append(AttributeOccurrence(owner, prop, t.object, t))

    entities = {node: Entity(node, kinds[node], tuple(attrs[node])) for node in order}
    rank = {node: i for i, node in enumerate(order)}
    rels.sort(key=lambda r: (rank[r.source], r.predicate.key, r.target))
    catalogs = [n for n in order if kinds[n] == EntityKind.CATALOG]
    return CatalogModel(
        catalog_node=catalogs[0] if catalogs else None,
        entities=entities,
        relationships=tuple(rels),
        triple_count=len(triples),
        triples=triples,
    )


def make_model(entities: Iterable[Entity], relationships: Iterable[RelationshipInstance],
               triple_count: int = 0) -> CatalogModel:
    """Assemble a model directly (used for synthetic and scaled catalogs)."""
    ents = sorted(entities, key=lambda e: (e.kind.rank, e.id))
    catalogs = [e.id for e in ents if e.kind == EntityKind.CATALOG]
    return CatalogModel(
        catalog_node=catalogs[0] if catalogs else None,
        entities={e.id: e for e in ents},
        relationships=tuple(relationships),
        triple_count=triple_count,
    )
