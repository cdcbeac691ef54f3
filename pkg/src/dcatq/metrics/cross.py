"""Cross-catalog dimensions: compatibility and attribute-level similarity."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import EmptyCatalog, KeyUnavailable
from ..ingest.catalog import CatalogModel, Entity, EntityKind
from ..timeutil import parse_timestamp
from .results import Finding

DCT_TEMPORAL = "http://purl.org/dc/terms/temporal"
DCAT_START = "http://www.w3.org/ns/dcat#startDate"
DCAT_END = "http://www.w3.org/ns/dcat#endDate"

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def normalize_key(text: str) -> str:
    return " ".join(text.lower().split())


def dataset_key(entity: Entity) -> str:
    """Normalized identifier, else normalized title."""
    if entity.kind != EntityKind.DATASET:
        raise ValueError(f"{entity.id} is a {entity.kind.value}, not a dataset")
    for names in (("identifier",), ("title",)):
        for text in sorted(entity.texts(*names)):
            key = normalize_key(text)
            if key:
                return key
    raise KeyUnavailable(f"{entity.id} has neither identifier nor title")


def dataset_keys(model: CatalogModel) -> set[str]:
    keys = set()
    for ds in model.datasets:
        try:
            keys.add(dataset_key(ds))
        except KeyUnavailable:
            continue
    return keys


def compatibility_exact(c1: CatalogModel, c2: CatalogModel) -> Fraction:
    """Share of c1's dataset keys also present in c2, in percent, as an exact rational."""
    k1, k2 = dataset_keys(c1), dataset_keys(c2)
    if not k1:
        raise EmptyCatalog("first catalog has no keyable datasets")
    return Fraction(100 * len(k1 & k2), len(k1))


def compatibility(c1: CatalogModel, c2: CatalogModel) -> float:
    """Share of c1's dataset keys also present in c2 (asymmetric)."""
    return float(compatibility_exact(c1, c2))


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def value_similarity(a: str, b: str, measure: str = "jaccard") -> float:
    ta, tb = tokenize(a), tokenize(b)
    if not ta and not tb:
        return 1.0
    if not ta or not tb:
        return 0.0
    if measure == "jaccard":
        sa, sb = set(ta), set(tb)
        return len(sa & sb) / len(sa | sb)
    if measure == "cosine":
        ca, cb = Counter(ta), Counter(tb)
        if ca == cb:
            return 1.0
        dot = sum(ca[t] * cb[t] for t in ca.keys() & cb.keys())
        norm = math.sqrt(sum(v * v for v in ca.values())) * math.sqrt(sum(v * v for v in cb.values()))
        return min(1.0, dot / norm)
    raise ValueError(f"unknown similarity measure {measure!r}")


def similarity_text(entity: Entity, fields: tuple[str, ...] = ("title", "description")) -> str:
    return " ".join(" ".join(entity.texts(name)) for name in fields)


@dataclass
class Pairing:
    pairs: list[tuple[str, str, float]]

    @property
    def k(self) -> int:
        return len(self.pairs)

    def to_dict(self) -> dict:
        return {"k": self.k, "pairs": [list(p) for p in self.pairs]}


def score_matrix(c1: CatalogModel, c2: CatalogModel, measure: str = "jaccard",
                 fields: tuple[str, ...] = ("title", "description")) -> list[list[float]]:
    texts2 = [similarity_text(d, fields) for d in c2.datasets]
    return [[value_similarity(similarity_text(d, fields), t2, measure) for t2 in texts2] for d in c1.datasets]


def greedy_assignment(matrix: list[list[float]], floor: float = 0.0) -> list[tuple[int, int, float]]:
    """Repeatedly take the best remaining cell; ties go to the lowest (row, column)."""
    cells = sorted(
        ((score, i, j) for i, row in enumerate(matrix) for j, score in enumerate(row) if score >= floor),
        key=lambda c: (-c[0], c[1], c[2]),
    )
    used_rows, used_cols = set(), set()
    chosen = []
    for score, i, j in cells:
        if i in used_rows or j in used_cols:
            continue
        used_rows.add(i)
        used_cols.add(j)
        chosen.append((i, j, score))
    return sorted(chosen)


def pair_objects(c1: CatalogModel, c2: CatalogModel, measure: str = "jaccard", floor: float = 0.0,
                 fields: tuple[str, ...] = ("title", "description")) -> Pairing:
    d1, d2 = c1.datasets, c2.datasets
    if not d1 or not d2:
        raise EmptyCatalog("both catalogs need at least one dataset to pair")
    matrix = score_matrix(c1, c2, measure, fields)
    return Pairing([(d1[i].id, d2[j].id, s) for i, j, s in greedy_assignment(matrix, floor)])


def attribute_similarity(c1: CatalogModel, c2: CatalogModel, measure: str = "jaccard", floor: float = 0.0,
                         fields: tuple[str, ...] = ("title", "description")) -> float:
    return similarity_from_pairing(pair_objects(c1, c2, measure, floor, fields))


def similarity_from_pairing(pairing: Pairing) -> float:
    if pairing.k == 0:
        raise EmptyCatalog("no dataset pair cleared the pairing floor")
    return 100.0 * sum(score for _, _, score in pairing.pairs) / pairing.k


# -- advisories (reported, never scored) -----------------------------------------

def _licenses(model: CatalogModel) -> set[str]:
    out = set()
    for ent in model.entities.values():
        out.update(normalize_key(t) for t in ent.texts("license") if t.strip())
    return out


def _temporal_range(model: CatalogModel):
    """Union (min start, max end) of the dct:temporal periods of all datasets."""
    if model.triples is None:
        return None
    by_subject = {}
    for t in model.triples:
        by_subject.setdefault(t.subject.node_id, []).append(t)
    starts, ends = [], []
    for ds in model.datasets:
        for t in by_subject.get(ds.id, []):
            if t.predicate != DCT_TEMPORAL or t.object.is_literal:
                continue
            for p in by_subject.get(t.object.node_id, []):
                ts = parse_timestamp(p.object.lexical) if p.object.is_literal else None
                if ts is None:
                    continue
                if p.predicate == DCAT_START:
                    starts.append(ts)
                elif p.predicate == DCAT_END:
                    ends.append(ts)
    if not starts or not ends:
        return None
    return min(starts), max(ends)


def advisories(c1: CatalogModel, c2: CatalogModel, names: tuple[str, str]) -> list[Finding]:
    out = []
    l1, l2 = _licenses(c1), _licenses(c2)
    if l1 and l2 and not l1 & l2:
        out.append(Finding(names[0], "license_mismatch", f"no license in common with {names[1]}",
                           severity="warning"))
    r1, r2 = _temporal_range(c1), _temporal_range(c2)
    if r1 and r2 and (r1[1] < r2[0] or r2[1] < r1[0]):
        out.append(Finding(names[0], "temporal_disjoint", f"temporal coverage does not overlap {names[1]}",
                           severity="warning"))
    for label, model in zip(names, (c1, c2)):
        for ds in model.datasets:
            try:
                dataset_key(ds)
            except KeyUnavailable:
                out.append(Finding(ds.id, "unkeyed_dataset", f"dataset in {label} cannot be keyed",
                                   severity="warning"))
    return out
