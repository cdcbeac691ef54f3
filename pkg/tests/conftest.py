from pathlib import Path

import pytest

from dcatq.config import QualityConfig
from dcatq.ingest import build_catalog, parse_rdf
from dcatq.probe import ProbeResult, load_fixtures

DATA = Path(__file__).parent / "data"

PREFIXES = """\
@prefix dcat: <http://www.w3.org/ns/dcat#> .
@prefix dct:  <http://purl.org/dc/terms/> .
@prefix prov: <http://www.w3.org/ns/prov#> .
@prefix xsd:  <http://www.w3.org/2001/XMLSchema#> .
@prefix ex:   <http://example.org/> .
"""


def catalog_from_turtle(body: str):
    return build_catalog(parse_rdf((PREFIXES + body).encode("utf-8"), "turtle"))


def ok(url, ms=100, content_type="text/csv", status=200):
    return ProbeResult(url, "ok", status, content_type, ms)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def golden_path():
    return DATA / "golden.ttl"


@pytest.fixture
def golden_fixtures_path():
    return DATA / "golden_fixtures.json"


@pytest.fixture
def golden_model(golden_path):
    return build_catalog(parse_rdf(golden_path.read_bytes(), "turtle"))


@pytest.fixture
def golden_probes(golden_fixtures_path):
    return load_fixtures(golden_fixtures_path)


@pytest.fixture
def config():
    return QualityConfig()
