from datetime import datetime, timezone

import pytest
from dateutil.parser import isoparse

from dcatq.config import QualityConfig
from dcatq.errors import ConfigSchemaError, InsufficientData, ProbeMissing
from dcatq.ingest import RdfTerm
from dcatq.ingest.catalog import AttributeOccurrence
from dcatq.ingest.terms import Triple
from dcatq.ingest.vocab import normalize_predicate
from dcatq.metrics.core import (
    attribute_accuracy_details,
    attribute_error,
    attribute_level_accuracy,
    availability,
    combine_accuracy,
    completeness,
    completeness_details,
    consistency,
    freshness,
    overall_accuracy,
    relationship_error,
    relationship_level_accuracy,
    replicate,
    scalability_probe,
    scalability_verdict,
    timeliness,
)
from dcatq.metrics.results import ScalabilitySample
from dcatq.probe import ProbeResult

from .conftest import catalog_from_turtle, ok

DCT = "http://purl.org/dc/terms/"
DCAT = "http://www.w3.org/ns/dcat#"
NOW = datetime(2024, 3, 21, tzinfo=timezone.utc)


def occurrence(predicate, value):
    subject = RdfTerm.iri("http://example.org/d")
    term = RdfTerm.literal(value) if not value.startswith("http") else RdfTerm.iri(value)
    return AttributeOccurrence(subject.lexical, normalize_predicate(predicate), term,
                               Triple(subject, predicate, term))


def single_dataset(extra_ds="", extra=""):
    return catalog_from_turtle(f"""
        ex:c a dcat:Catalog ; dcat:dataset ex:d .
        ex:d a dcat:Dataset ; dct:title "Air quality" {extra_ds} .
        {extra}
    """)


class TestAttributeError:
    def test_well_formed_title(self):
        assert attribute_error(occurrence(DCT + "title", "HADEA datasets"), {}) == 0.0

    def test_broken_link(self):
        url = "http://files.example.org/a.csv"
        probes = {url: ProbeResult(url, "http_error", 404, "text/html", 50)}
        assert attribute_error(occurrence(DCAT + "accessURL", url), probes) == 1.0

    def test_natural_language_date_rejected(self):
        with pytest.raises(ValueError):
            isoparse("next Tuesday")
        assert attribute_error(occurrence(DCT + "modified", "next Tuesday"), {}) == 1.0

    @pytest.mark.parametrize("stamp", ["2023-05-01", "2023-05-01T10:00:00Z", "2023-05-01T10:00:00+02:00"])
    def test_iso_dates_accepted(self, stamp):
        isoparse(stamp)
        assert attribute_error(occurrence(DCT + "modified", stamp), {}) == 0.0

    def test_empty_value(self):
        assert attribute_error(occurrence(DCT + "title", "   "), {}) == 1.0

    def test_missing_probe_raises(self):
        with pytest.raises(ProbeMissing):
            attribute_error(occurrence(DCAT + "downloadURL", "https://files.example.org/x.json"), {})

    def test_non_http_url_is_warning_not_error(self):
        assert attribute_error(occurrence(DCAT + "accessURL", "ftp://files.example.org/x"), {}) == 0.0


class TestAttributeAccuracy:
    def test_ten_clean_occurrences(self):
        body = " ; ".join(f'ex:p{i} "v{i}"' for i in range(9))
        model = catalog_from_turtle(f"ex:c a dcat:Catalog ; dcat:dataset ex:d . ex:d a dcat:Dataset ; dct:title \"t\" ; {body} .")
        assert sum(1 for _ in model.attributes()) == 10
        assert attribute_level_accuracy(model, {}) == 100.0

    def test_ten_occurrences_two_errors(self):
        body = " ; ".join(f'ex:p{i} "v{i}"' for i in range(7))
        model = catalog_from_turtle(f"""ex:c a dcat:Catalog ; dcat:dataset ex:d .
            ex:d a dcat:Dataset ; dct:title "" ; dct:modified "soon" ; dct:description "d" ; {body} .""")
        assert attribute_level_accuracy(model, {}) == 80.0

    def test_four_occurrences_broken_link_and_empty_title(self):
        url = "http://files.example.org/a.csv"
        model = catalog_from_turtle(f"""
            ex:c a dcat:Catalog ; dcat:dataset ex:d .
            ex:d a dcat:Dataset ; dct:title "" ; dct:description "Air" ; dcat:distribution ex:x .
            ex:x a dcat:Distribution ; dcat:accessURL <{url}> ; dct:format "CSV" .
        """)
        probes = {url: ProbeResult(url, "http_error", 404, None, 40)}
        value, findings = attribute_accuracy_details(model, probes)
        assert value == 50.0
        assert sorted(f.rule for f in findings) == ["broken_link", "empty_value"]

    def test_golden(self, golden_model, golden_probes):
        assert attribute_level_accuracy(golden_model, golden_probes) == 100 * 20 / 22


DUPLICATE_DISTS = """
    ex:c a dcat:Catalog ; dcat:dataset ex:d .
    ex:d a dcat:Dataset ; dct:title "Air" ; dcat:distribution ex:x1, ex:x2 .
    ex:x1 a dcat:Distribution ; dct:title "Air CSV" ; dct:description "Hourly values" .
    ex:x2 a dcat:Distribution ; dct:title "Air CSV" ; dct:description "Hourly values" .
"""


class TestRelationshipAccuracy:
    def test_intact_and_dangling(self):
        model = catalog_from_turtle("""
            ex:c a dcat:Catalog ; dcat:dataset ex:d .
            ex:d a dcat:Dataset ; dcat:distribution ex:x, ex:gone .
            ex:x a dcat:Distribution ; dct:title "file" .
        """)
        errors = {rel.target: relationship_error(rel, model) for rel in model.relationships}
        assert errors == {"http://example.org/d": 0.0, "http://example.org/x": 0.0, "http://example.org/gone": 1.0}

    def test_duplicate_information_flags_second_only(self):
        model = catalog_from_turtle(DUPLICATE_DISTS)
        errors = {rel.target: relationship_error(rel, model) for rel in model.relationships}
        assert errors["http://example.org/x1"] == 0.0
        assert errors["http://example.org/x2"] == 1.0
        assert relationship_level_accuracy(model) == 100 * 2 / 3

    def test_five_intact(self):
        model = catalog_from_turtle("""
            ex:c a dcat:Catalog ; dcat:dataset ex:d1, ex:d2 .
            ex:d1 a dcat:Dataset ; dcat:distribution ex:x1, ex:x2 .
            ex:d2 a dcat:Dataset ; dcat:distribution ex:x3 .
            ex:x1 a dcat:Distribution ; dct:title "a" . ex:x2 a dcat:Distribution ; dct:title "b" .
            ex:x3 a dcat:Distribution ; dct:title "c" .
        """)
        assert len(model.relationships) == 5
        assert relationship_level_accuracy(model) == 100.0

    def test_four_with_one_dangling(self):
        model = catalog_from_turtle("""
            ex:c a dcat:Catalog ; dcat:dataset ex:d1 .
            ex:d1 a dcat:Dataset ; dcat:distribution ex:x1, ex:x2, ex:gone .
            ex:x1 a dcat:Distribution ; dct:title "a" . ex:x2 a dcat:Distribution ; dct:title "b" .
        """)
        assert relationship_level_accuracy(model) == 75.0

    def test_no_relationships_vacuous(self):
        from dcatq.metrics.core import relationship_accuracy_details

        model = catalog_from_turtle('ex:d a dcat:Dataset ; dct:title "alone" .')
        value, findings = relationship_accuracy_details(model)
        assert value == 100.0
        assert [f.severity for f in findings] == ["warning"]


class TestOverallAccuracy:
    @pytest.mark.parametrize("alpha, attr, rel, expected", [
        (0.5, 90, 70, 80.0), (1.0, 63, 12, 63.0), (1.0, 63, 99, 63.0), (0.7, 90, 50, 78.0), (0.0, 10, 40, 40.0)])
    def test_combine(self, alpha, attr, rel, expected):
        assert combine_accuracy(attr, rel, alpha) == pytest.approx(expected, abs=1e-12)

    def test_rejects_alpha_out_of_range(self):
        with pytest.raises(ValueError):
            combine_accuracy(50, 50, 1.2)

    def test_golden(self, golden_model, golden_probes):
        expected = 0.5 * (100 * 20 / 22) + 0.5 * (100 * 5 / 6)
        assert overall_accuracy(golden_model, golden_probes, 0.5) == expected


class TestCompleteness:
    def test_all_present(self, config):
        model = catalog_from_turtle("""
            ex:c a dcat:Catalog ; dct:title "C" ; dct:description "D" ; dct:publisher ex:p ; dcat:dataset ex:d .
            ex:d a dcat:Dataset ; dct:title "T" ; dct:description "D" ; dct:publisher ex:p ;
                dct:issued "2023-01-01" ; dcat:distribution ex:x .
            ex:x a dcat:Distribution ; dcat:accessURL <http://h/a> ; dct:format "CSV" .
        """)
        assert completeness(model, config) == 100.0

    def test_one_dataset_missing_description(self, config):
        # the distribution link dangles, so only the dataset's 5 pairs count
        model = catalog_from_turtle("""
            ex:d a dcat:Dataset ; dct:title "T" ; dct:publisher ex:p ; dct:modified "2023-01-01" ;
                dcat:distribution ex:x .
        """)
        value, findings, extra = completeness_details(model, config)
        assert extra == {"satisfied_pairs": 4, "required_pairs": 5}
        assert value == 80.0
        assert [f.property for f in findings] == ["description"]

    def test_ten_pair_table(self, config):
        model = catalog_from_turtle("""
            ex:d1 a dcat:Dataset ; dct:title "One" ; dct:description "D" ; dct:issued "2023-01-01" ;
                dcat:distribution ex:x .
            ex:d2 a dcat:Dataset ; dct:title "Two" ; dct:description "D" ; dct:publisher ex:p ;
                dct:issued "2023-01-01" .
        """)
        value, findings, extra = completeness_details(model, config)
        assert extra == {"satisfied_pairs": 8, "required_pairs": 10}
        assert value == 80.0
        assert sorted(f.rule for f in findings) == ["missing_attribute", "missing_relationship"]

    def test_empty_value_does_not_count(self, config):
        model = catalog_from_turtle('ex:d a dcat:Dataset ; dct:title "" .')
        assert completeness(model, config) == 0.0

    def test_golden(self, golden_model, config):
        assert completeness(golden_model, config) == 100 * 17 / 19


class TestConsistency:
    def test_one_of_five_date_order(self, config):
        model = catalog_from_turtle("""
            ex:c a dcat:Catalog ; dct:title "Catalog" ; dcat:dataset ex:d1, ex:d2 .
            ex:d1 a dcat:Dataset ; dct:title "First" ; dct:issued "2023-05-01" ; dct:modified "2023-01-01" ;
                dcat:distribution ex:x1 .
            ex:d2 a dcat:Dataset ; dct:title "Second" ; dct:issued "2023-01-01" ; dct:modified "2023-05-01" ;
                dcat:distribution ex:x2 .
            ex:x1 a dcat:Distribution ; dct:title "one" . ex:x2 a dcat:Distribution ; dct:title "two" .
        """)
        value, violations = consistency(model, config, {})
        assert value == 80.0
        assert [(v.entity, v.rule) for v in violations] == [("http://example.org/d1", "R1_date_order")]
        assert len(violations[0].triples_involved) == 2

    def test_duplicate_titles(self, config):
        model = catalog_from_turtle("""
            ex:d1 a dcat:Dataset ; dct:title "Budget" .
            ex:d2 a dcat:Dataset ; dct:title "  budget " .
        """)
        value, violations = consistency(model, config, {})
        assert value == 0.0
        assert sorted(v.rule for v in violations) == ["R2_duplicate_label"] * 2

    def test_format_mismatch(self, config):
        url = "http://files.example.org/data.json"
        model = catalog_from_turtle(f"""
            ex:d a dcat:Dataset ; dct:title "Data" ; dcat:distribution ex:x .
            ex:x a dcat:Distribution ; dcat:mediaType "application/json" ; dcat:downloadURL <{url}> .
        """)
        probes = {url: ok(url, content_type="application/vnd.ms-excel")}
        value, violations = consistency(model, config, probes)
        assert [(v.entity, v.rule) for v in violations] == [("http://example.org/x", "R4_format_mismatch")]
        assert value == 50.0

    def test_format_agrees(self, config):
        url = "http://files.example.org/data.json"
        model = catalog_from_turtle(f"""
            ex:d a dcat:Dataset ; dct:title "Data" ; dcat:distribution ex:x .
            ex:x a dcat:Distribution ; dcat:mediaType "application/json" ; dcat:downloadURL <{url}> .
        """)
        assert consistency(model, config, {url: ok(url, content_type="application/json; charset=utf-8")})[1] == []

    def test_language_mismatch(self, config):
        model = catalog_from_turtle("""
            ex:d a dcat:Dataset ;
                dct:title "Die Daten der Stadt und die Zahlen für das Jahr mit den Werten"@en .
        """)
        assert [v.rule for v in consistency(model, config, {})[1]] == ["R3_language_mismatch"]

    def test_short_text_not_judged(self, config):
        model = catalog_from_turtle('ex:d a dcat:Dataset ; dct:title "Die Daten"@en .')
        assert consistency(model, config, {})[1] == []

    def test_rule_subset(self, config):
        model = catalog_from_turtle("""
            ex:d1 a dcat:Dataset ; dct:title "Same" . ex:d2 a dcat:Dataset ; dct:title "Same" .
        """)
        cfg = config.with_overrides(consistency_rules=["R1_date_order"])
        assert consistency(model, cfg, {}) == (100.0, [])

    def test_golden(self, golden_model, golden_probes, config):
        value, violations = consistency(golden_model, config, golden_probes)
        assert value == 100 * 5 / 6
        assert [v.rule for v in violations] == ["R1_date_order"]


def quadratic(model, config):
    datasets = model.datasets
    total = 0
    for a in datasets:
        for b in datasets:
            total += a is b
    return total


class TestScalability:
    def test_replicate_counts(self, golden_model):
        scaled = replicate(golden_model, 7)
        assert len(scaled.datasets) == 7
        assert len({d.id for d in scaled.datasets}) == 7

    def test_replicate_needs_datasets(self):
        model = catalog_from_turtle('ex:c a dcat:Catalog ; dct:title "empty" .')
        with pytest.raises(InsufficientData):
            replicate(model, 10)

    def test_constant_per_record(self):
        samples = [ScalabilitySample(n, 2000 * n) for n in (250, 500, 1000)]
        assert scalability_verdict(samples, 1.5) is True

    def test_ratio_boundary(self):
        assert scalability_verdict([ScalabilitySample(100, 100), ScalabilitySample(200, 300)], 1.5) is True
        assert scalability_verdict([ScalabilitySample(100, 100), ScalabilitySample(200, 301)], 1.5) is False

    def test_linear_scan(self, golden_model, config):
        verdict, samples = scalability_probe(golden_model, config.with_overrides(scalability_sizes=[250, 500, 1000]))
        assert [s.n_records for s in samples] == [250, 500, 1000]
        assert verdict is True

    def test_quadratic_double(self, golden_model, config):
        cfg = config.with_overrides(scalability_sizes=[100, 200, 400])
        verdict, _ = scalability_probe(golden_model, cfg, operation=quadratic)
        assert verdict is False

    def test_bad_sizes_rejected_by_config(self, config):
        with pytest.raises(ConfigSchemaError):
            config.with_overrides(scalability_sizes=[1000, 500, 250])


def dated(*stamps):
    body = " ; ".join(f'dct:modified "{s}"' for s in stamps)
    return catalog_from_turtle(f'ex:d a dcat:Dataset ; dct:title "T" {"; " + body if body else ""} .')


class TestFreshness:
    def test_all_2023(self):
        assert freshness(dated("2023-01-10", "2023-11-30T08:00:00Z"), NOW)[0] is True

    def test_future(self):
        verdict, findings = freshness(dated("2023-01-10", "2099-01-01"), NOW)
        assert verdict is False
        assert [f.rule for f in findings] == ["future_timestamp"]

    def test_no_stamps(self):
        verdict, findings = freshness(dated(), NOW)
        assert verdict is False
        assert [f.rule for f in findings] == ["no_timestamps"]

    def test_unparseable(self):
        assert freshness(dated("yesterday"), NOW)[1][0].rule == "unparseable_timestamp"

    def test_staleness_bound(self):
        assert freshness(dated("2020-01-01"), NOW, max_staleness_days=365)[0] is False
        assert freshness(dated("2024-01-01"), NOW, max_staleness_days=365)[0] is True


def with_urls(*urls):
    dists = " ".join(f"ex:x{i} a dcat:Distribution ; dcat:accessURL <{u}> ." for i, u in enumerate(urls))
    links = ", ".join(f"ex:x{i}" for i in range(len(urls)))
    return catalog_from_turtle(f"""
        ex:d a dcat:Dataset ; dct:title "T" ; dct:modified "2023-06-01" ; dcat:distribution {links} .
        {dists}
    """)


URLS = ("http://h/a.csv", "http://h/b.csv", "http://h/c.csv")


class TestAvailability:
    def test_all_fast(self):
        assert availability(with_urls(*URLS), {u: ok(u, 120) for u in URLS}, 5000) == (True, [])

    def test_one_slow(self):
        probes = {u: ok(u, 120) for u in URLS} | {URLS[1]: ok(URLS[1], 8000)}
        verdict, findings = availability(with_urls(*URLS), probes, 5000)
        assert verdict is False
        assert [f.rule for f in findings] == ["slow_response"]

    def test_one_timeout(self):
        probes = {u: ok(u, 120) for u in URLS} | {URLS[2]: ProbeResult(URLS[2], "timeout", None, None, 10000)}
        verdict, findings = availability(with_urls(*URLS), probes, 5000)
        assert verdict is False
        assert [f.rule for f in findings] == ["failed_probe"]

    def test_threshold_inclusive(self):
        assert availability(with_urls(URLS[0]), {URLS[0]: ok(URLS[0], 5000)}, 5000)[0] is True

    def test_missing_fixture(self):
        with pytest.raises(ProbeMissing):
            availability(with_urls(URLS[0]), {}, 5000)


class TestTimeliness:
    @pytest.mark.parametrize("stamp, ms, expected", [
        ("2023-06-01", 120, (True, True, True)),
        ("2023-06-01", 8000, (False, True, False)),
        ("2099-06-01", 120, (False, False, True)),
        ("2099-06-01", 8000, (False, False, False)),
    ])
    def test_combinations(self, stamp, ms, expected):
        model = catalog_from_turtle(f"""
            ex:d a dcat:Dataset ; dct:title "T" ; dct:modified "{stamp}" ; dcat:distribution ex:x .
            ex:x a dcat:Distribution ; dcat:accessURL <http://h/a.csv> .
        """)
        result = timeliness(model, {"http://h/a.csv": ok("http://h/a.csv", ms)}, QualityConfig(), NOW)
        assert (result.verdict, result.freshness, result.availability) == expected

    def test_golden(self, golden_model, golden_probes, config):
        result = timeliness(golden_model, golden_probes, config, NOW)
        assert (result.verdict, result.freshness, result.availability) == (False, True, False)
