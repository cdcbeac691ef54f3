"""Command line: ``dcatq assess`` and ``dcatq compare``.

Exit codes: 0 report written, 1 the catalog could not be assessed,
2 usage, input or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .config import DIMENSIONS, QualityConfig, load_config
from .errors import AssessmentError, ConfigSchemaError, DcatqError, UsageError
from .ingest import load_catalog
from .ingest.vocab import load_mapping
from .metrics.core import availability_urls
from .probe import load_fixtures, probe_all
from .render import FORMATS, render_report
from .report import assess, compare

log = logging.getLogger("dcatq")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="F", help="JSON config merged over the defaults")
    parser.add_argument("--offline", metavar="F", help="probe fixture file; disables live probing")
    parser.add_argument("--format", choices=FORMATS, default="json", help="report format (default: json)")
    parser.add_argument("--dimensions", metavar="LIST",
                        help=f"comma-separated subset of: {','.join(DIMENSIONS)}")
    parser.add_argument("--format-hint", choices=("turtle", "rdf-xml"),
                        help="RDF serialization when it cannot be told from the name")
    parser.add_argument("--mapping", metavar="F", help="extra predicate mapping table (IRI<TAB>name)")
    parser.add_argument("--plot", metavar="DIR", help="also write PNG figures into DIR")
    parser.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcatq", description="Quality assessment for DCAT open data catalogs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assess", help="assess one catalog")
    p.add_argument("source", help="catalog file or http(s) URL (.ttl, .rdf, .xml)")
    _common(p)
    p.add_argument("--no-network", action="store_true",
                   help="never probe live; probe-dependent dimensions are skipped without --offline")
    p.add_argument("--timings", action="store_true", help="include raw scalability timings in the report")

    p = sub.add_parser("compare", help="compare two catalogs")
    p.add_argument("source1")
    p.add_argument("source2")
    _common(p)
    return parser


def _config(args) -> QualityConfig:
    config = load_config(args.config)
    if args.dimensions:
        dims = [d.strip() for d in args.dimensions.split(",") if d.strip()]
        unknown = [d for d in dims if d not in DIMENSIONS]
        if unknown:
            raise ConfigSchemaError("dimensions", f"unknown dimension(s): {', '.join(unknown)}")
        config = config.with_overrides(dimensions=dims)
    return config


def _probes(args, config: QualityConfig, model):
    if args.offline:
        return load_fixtures(args.offline, timeout_ms=config.probe_timeout_ms)
    if args.no_network:
        return None
    if not any(d in config.dimensions for d in ("accuracy", "timeliness", "consistency")):
        return {}
    urls = {url for _, url in availability_urls(model)}
    urls |= {a.text.strip() for a in model.attributes() if a.property.name == "landing_page"}
    log.info("probing %d URLs", len(urls))
    return probe_all(urls, config.probe_max_in_flight, config.probe_timeout_ms, config.probe_retries)


def run_assess(args) -> int:
    config = _config(args)
    mapping = load_mapping(args.mapping) if args.mapping else None
    model = load_catalog(args.source, args.format_hint, mapping)
    probes = _probes(args, config, model)
    report = assess(model, config, probes, source=args.source, include_timings=args.timings)
    sys.stdout.write(render_report(report, args.format))
    if args.plot:
        from .plotting import write_figures

        for path in write_figures(report, args.plot, Path(args.source).stem or "catalog"):
            log.info("wrote %s", path)
    return 0


def run_compare(args) -> int:
    config = _config(args)
    mapping = load_mapping(args.mapping) if args.mapping else None
    c1 = load_catalog(args.source1, args.format_hint, mapping)
    c2 = load_catalog(args.source2, args.format_hint, mapping)
    report = compare(c1, c2, config, (args.source1, args.source2))
    sys.stdout.write(render_report(report, args.format))
    if args.plot:
        from .plotting import write_figures

        stem = f"{Path(args.source1).stem}_vs_{Path(args.source2).stem}"
        for path in write_figures(report, args.plot, stem):
            log.info("wrote %s", path)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "assess":
            return run_assess(args)
        return run_compare(args)
    except UsageError as exc:
        print(f"dcatq: error: {exc}", file=sys.stderr)
        return 2
    except AssessmentError as exc:
        print(f"dcatq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except DcatqError as exc:
        print(f"dcatq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"dcatq: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
