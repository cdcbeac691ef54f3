"""Quality assessment for DCAT / Dublin Core open data catalogs."""

__version__ = "0.1.0"

from .config import QualityConfig, load_config  # noqa: E402
from .ingest import build_catalog, load_catalog, parse_rdf  # noqa: E402
from .probe import load_fixtures, probe_all  # noqa: E402
from .render import render_report  # noqa: E402
from .report import ComparisonReport, QualityReport, assess, compare  # noqa: E402

__all__ = [
    "ComparisonReport", "QualityConfig", "QualityReport", "assess", "build_catalog",
    "compare", "load_catalog", "load_config", "load_fixtures", "parse_rdf", "probe_all",
    "render_report",
]
