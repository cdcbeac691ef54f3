"""Hypothesis strategies for small random DCAT catalogs written as Turtle."""

from hypothesis import strategies as st

from dcatq.ingest import build_catalog, parse_rdf
from dcatq.probe import ProbeResult

from .conftest import PREFIXES

WORDS = ["air", "water", "budget", "city", "open", "data", "river", "bus", "school", "energy", "the", "of"]
URLS = [f"http://files.example.org/f{i}.{ext}" for i, ext in enumerate(["csv", "json", "xlsx", "xml", "pdf", "zip"])]
FORMATS = ["CSV", "JSON", "XLSX", "XML", "PDF", "ZIP", "application/json", "text/csv"]
CONTENT_TYPES = ["text/csv", "application/json", "application/vnd.ms-excel", "application/xml", None]
DATES = ["2019-01-01", "2020-06-15", "2021-12-31T10:00:00Z", "2023-03-01", "2099-01-01", "not a date", ""]

text = st.lists(st.sampled_from(WORDS), min_size=0, max_size=6).map(" ".join)


def _literal(value):
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


@st.composite
def distribution(draw, name):
    props = []
    if draw(st.booleans()):
        props.append(f"dcat:accessURL <{draw(st.sampled_from(URLS))}>")
    if draw(st.booleans()):
        props.append(f"dcat:downloadURL <{draw(st.sampled_from(URLS))}>")
    if draw(st.booleans()):
        props.append(f"dct:format {_literal(draw(st.sampled_from(FORMATS)))}")
    if draw(st.booleans()):
        props.append(f"dct:title {_literal(draw(text))}")
    if draw(st.booleans()):
        props.append("dct:license ex:cc")
    return f"ex:{name} a dcat:Distribution" + "".join(f" ; {p}" for p in props) + " ."


@st.composite
def dataset(draw, name, n_dists, keys):
    props = []
    if draw(st.booleans()):
        props.append(f"dct:identifier {_literal(draw(st.sampled_from(keys)))}")
    if draw(st.booleans()):
        props.append(f"dct:title {_literal(draw(text))}")
    if draw(st.booleans()):
        props.append(f"dct:description {_literal(draw(text))}")
    if draw(st.booleans()):
        props.append("dct:publisher ex:agency")
    for prop in ("issued", "modified"):
        if draw(st.booleans()):
            props.append(f"dct:{prop} {_literal(draw(st.sampled_from(DATES)))}")
    if draw(st.booleans()):
        props.append("dct:license ex:cc")
    if draw(st.booleans()):
        props.append("dct:provenance ex:statement")
    links = [f"ex:{name}x{i}" for i in range(n_dists)]
    if draw(st.booleans()):
        links.append(f"ex:{name}gone")
    if links:
        props.append("dcat:distribution " + ", ".join(links))
    dists = [draw(distribution(f"{name}x{i}")) for i in range(n_dists)]
    body = f"ex:{name} a dcat:Dataset" + "".join(f" ; {p}" for p in props) + " ."
    return "\n".join([body] + dists)


@st.composite
def catalog_turtle(draw, max_entities=50, keys=("K1", "K2", "K3", "K4", "K5", "K6")):
    n_datasets = draw(st.integers(1, 8))
    budget = max_entities - 1 - n_datasets
    parts = []
    names = [f"d{i}" for i in range(n_datasets)]
    for name in names:
        n = draw(st.integers(0, min(3, budget)))
        budget -= n
        parts.append(draw(dataset(name, n, list(keys))))
    title = draw(text)
    parts.insert(0, f"ex:cat a dcat:Catalog ; dct:title {_literal(title)} ; dcat:dataset "
                    + ", ".join(f"ex:{n}" for n in names) + " .")
    return "\n".join(parts)


def to_model(turtle):
    return build_catalog(parse_rdf((PREFIXES + turtle).encode("utf-8"), "turtle"))


catalogs = catalog_turtle().map(to_model)


@st.composite
def probe_results(draw):
    out = {}
    for url in URLS:
        outcome = draw(st.sampled_from(["ok", "ok", "http_error", "timeout", "connection_error"]))
        ms = draw(st.integers(1, 9000))
        if outcome == "ok":
            out[url] = ProbeResult(url, "ok", 200, draw(st.sampled_from(CONTENT_TYPES)), ms)
        elif outcome == "http_error":
            out[url] = ProbeResult(url, "http_error", draw(st.sampled_from([404, 500])), "text/html", ms)
        else:
            out[url] = ProbeResult(url, outcome, None, None, 10000 if outcome == "timeout" else ms)
    return out
