"""Plain RDF value types, independent of the parser backend."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

IRI = "iri"
BLANK = "blank-node"
LITERAL = "literal"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


def is_iri(value: str) -> bool:
    """True for absolute IRIs (``scheme://...`` or ``urn:...``)."""
    return bool(value) and ("://" in value or value.startswith("urn:"))


@dataclass(frozen=True)
class RdfTerm:
    kind: str
    lexical: str
    language: str | None = None
    datatype: str | None = None

    def __post_init__(self):
        if self.kind not in (IRI, BLANK, LITERAL):
            raise ValueError(f"unknown term kind {self.kind!r}")
        if self.language is not None and self.kind != LITERAL:
            raise ValueError("language tag on a non-literal term")
        if self.language is not None and self.datatype is not None:
            raise ValueError("literal with both language tag and datatype")

    @classmethod
    def iri(cls, value: str) -> RdfTerm:
        return cls(IRI, value)

    @classmethod
    def blank(cls, label: str) -> RdfTerm:
        return cls(BLANK, label)

    @classmethod
    def literal(cls, value: str, language: str | None = None, datatype: str | None = None) -> RdfTerm:
        return cls(LITERAL, value, language, datatype)

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL

    @property
    def node_id(self) -> str:
        """Identifier used for entities: the IRI itself or ``_:label``."""
        if self.kind == BLANK:
            return f"_:{self.lexical}"
        return self.lexical

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.kind, self.lexical, self.language or "", self.datatype or "")

    def n3(self) -> str:
        if self.kind == IRI:
            return f"<{self.lexical}>"
        if self.kind == BLANK:
            return f"_:{self.lexical}"
        text = '"' + self.lexical.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'
        if self.language:
            return f"{text}@{self.language}"
        if self.datatype:
            return f"{text}^^<{self.datatype}>"
        return text


class Triple(NamedTuple):
    subject: RdfTerm
    predicate: str
    object: RdfTerm

    def sort_key(self):
        return (self.subject.sort_key(), self.predicate, self.object.sort_key())

    def n3(self) -> str:
        return f"{self.subject.n3()} <{self.predicate}> {self.object.n3()} ."


@dataclass(frozen=True)
class TripleSet:
    """Duplicate-free triples in lexicographic (subject, predicate, object) order."""

    triples: tuple[Triple, ...]
    source_format: str

    @classmethod
    def from_triples(cls, triples: Iterable[Triple], source_format: str) -> TripleSet:
        unique = set(triples)
        for t in unique:
            if t.subject.is_literal:
                raise ValueError(f"literal subject in {t.n3()}")
        return cls(tuple(sorted(unique, key=Triple.sort_key)), source_format)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)
