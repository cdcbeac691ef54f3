"""DCAT / Dublin Core predicate normalization.

The mapping lives in ``data/predicates.tsv`` (one ``IRI<TAB>name`` line per
predicate) so it can be extended without touching code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

CANONICAL_NAMES = (
    "title", "description", "identifier", "publisher", "creator", "issued",
    "modified", "language", "license", "rights", "keyword", "theme",
    "distribution", "access_url", "download_url", "media_type", "format",
    "provenance", "derived_from", "source", "landing_page", "other",
)

DATE_PROPERTIES = frozenset({"issued", "modified"})
URL_PROPERTIES = frozenset({"access_url", "download_url", "landing_page"})


@dataclass(frozen=True)
class CanonicalProperty:
    name: str
    raw_predicate: str

    @property
    def key(self) -> str:
        """Equality key: the canonical name, or the raw IRI for unmapped predicates."""
        return self.raw_predicate if self.name == "other" else self.name


def parse_mapping(text: str, origin: str = "<mapping>") -> dict[str, str]:
    mapping = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in CANONICAL_NAMES:
            raise ValueError(f"{origin}:{lineno}: expected '<IRI> <canonical name>', got {line!r}")
        iri, name = parts
        if mapping.get(iri, name) != name:
            raise ValueError(f"{origin}:{lineno}: {iri} mapped twice")
        mapping[iri] = name
    return mapping


@lru_cache(maxsize=1)
def default_mapping() -> dict[str, str]:
    text = resources.files("dcatq").joinpath("data/predicates.tsv").read_text(encoding="utf-8")
    return parse_mapping(text, "predicates.tsv")


def load_mapping(path: str | Path) -> dict[str, str]:
    """Bundled table extended (or overridden) by a user-supplied table."""
    path = Path(path)
    merged = dict(default_mapping())
    merged.update(parse_mapping(path.read_text(encoding="utf-8"), str(path)))
    return merged


def normalize_predicate(predicate: str, mapping: dict[str, str] | None = None) -> CanonicalProperty:
    table = default_mapping() if mapping is None else mapping
    return CanonicalProperty(table.get(predicate, "other"), predicate)
