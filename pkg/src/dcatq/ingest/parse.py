"""Turtle / RDF/XML parsing backed by rdflib.

rdflib assigns random blank-node ids, so the parser stream is recorded in
emission order and blank nodes are relabelled ``b0, b1, ...`` by first
appearance. The same bytes therefore always give the same TripleSet.
"""

from __future__ import annotations

import logging
from xml.sax import SAXParseException

import rdflib
from rdflib.plugins.parsers.notation3 import BadSyntax

from ..errors import EncodingError, RdfSyntaxError
from .terms import Triple, TripleSet, RdfTerm

log = logging.getLogger(__name__)

FORMATS = {"turtle": "turtle", "rdf-xml": "xml"}

# relative IRIs resolve against this; must not depend on the machine
DEFAULT_BASE = "file:///"


class _RecordingGraph(rdflib.Graph):
    def __init__(self):
        super().__init__()
        self.stream = []

    def add(self, triple):
        self.stream.append(triple)
        return super().add(triple)


def _convert(node, labels: dict) -> RdfTerm:
    if isinstance(node, rdflib.BNode):
        if node not in labels:
            labels[node] = f"b{len(labels)}"
        return RdfTerm.blank(labels[node])
    if isinstance(node, rdflib.Literal):
        language = node.language or None
        datatype = str(node.datatype) if node.datatype is not None and language is None else None
        return RdfTerm.literal(str(node), language, datatype)
    return RdfTerm.iri(str(node))


def parse_rdf(content: bytes, format: str, base: str = DEFAULT_BASE) -> TripleSet:
    """Parse a Turtle or RDF/XML document into a TripleSet."""
    if format not in FORMATS:
        raise ValueError(f"unsupported format {format!r}; expected one of {sorted(FORMATS)}")
    try:
        text = content.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"input is not valid UTF-8: {exc}") from exc

    graph = _RecordingGraph()
    try:
        graph.parse(data=text, format=FORMATS[format], publicID=base)
    except BadSyntax as exc:
        raise RdfSyntaxError(exc.lines + 1, exc._why) from exc
    except SAXParseException as exc:
        raise RdfSyntaxError(exc.getLineNumber(), exc.getMessage()) from exc
    except Exception as exc:  # rdflib raises assorted types for malformed input
        raise RdfSyntaxError(None, str(exc)) from exc

    labels: dict = {}
    triples = []
    for s, p, o in graph.stream:
        subject = _convert(s, labels)
        obj = _convert(o, labels)
        triples.append(Triple(subject, str(p), obj))
    log.debug("parsed %d statements (%d blank nodes)", len(triples), len(labels))
    return TripleSet.from_triples(triples, format)
