"""RDF ingestion: parsing, predicate normalization and the catalog model."""

from .catalog import (
    AttributeOccurrence,
    CatalogModel,
    Entity,
    EntityKind,
    RelationshipInstance,
    build_catalog,
    make_model,
)
from .loader import detect_format, load_catalog
from .parse import parse_rdf
from .terms import RdfTerm, Triple, TripleSet, is_iri
from .vocab import CanonicalProperty, normalize_predicate

__all__ = [
    "AttributeOccurrence", "CanonicalProperty", "CatalogModel", "Entity", "EntityKind",
    "RdfTerm", "RelationshipInstance", "Triple", "TripleSet", "build_catalog", "detect_format",
    "is_iri", "load_catalog", "make_model", "normalize_predicate", "parse_rdf",
]
