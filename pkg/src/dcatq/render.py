"""Report rendering: key-sorted JSON, a Markdown table in fixed row order, plain text."""

from __future__ import annotations

import json

from .config import DIMENSIONS
from .metrics.results import GRADE_DIMENSIONS, VERDICT_DIMENSIONS
from .report import ComparisonReport, QualityReport

FORMATS = ("json", "markdown", "text")

LABELS = {
    "accuracy": "Accuracy",
    "completeness": "Completeness",
    "consistency": "Consistency",
    "scalability": "Scalability",
    "timeliness": "Timeliness",
    "provenance": "Provenance",
    "readability": "Readability",
    "licensing": "Licensing",
}


def format_percent(value: float) -> str:
    return f"{value:.2f}%"


def format_verdict(verdict: bool) -> str:
    return "Yes" if verdict else "No"


def format_cell(report: QualityReport, dim: str) -> str:
    score = report.dimensions.get(dim)
    if score is None:
        return "skipped" if dim in report.skipped_dimensions else "n/a"
    if dim in VERDICT_DIMENSIONS:
        return format_verdict(score.verdict)
    if dim in GRADE_DIMENSIONS:
        return f"{score.value:.2f}"
    return format_percent(score.value)


def render_json(report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _sub_values(report: QualityReport) -> list[tuple[str, str]]:
    rows = []
    acc = report.dimensions.get("accuracy")
    if acc is not None:
        rows.append(("Attribute-level accuracy", format_percent(acc.extra["attribute_accuracy"])))
        rows.append(("Relationship-level accuracy", format_percent(acc.extra["relationship_accuracy"])))
        rows.append(("Alpha", f"{acc.extra['alpha']:.2f}"))
    tim = report.dimensions.get("timeliness")
    if tim is not None:
        rows.append(("Data freshness", format_verdict(tim.extra["freshness"])))
        rows.append(("Data availability", format_verdict(tim.extra["availability"])))
    return rows


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


def render_markdown(report: QualityReport) -> str:
    lines = [f"# Quality report: {report.catalog_source}", ""]
    lines.append(f"Assessed at {report.assessed_at} (config {report.config_digest}).")
    counts = ", ".join(f"{n} {kind}" for kind, n in report.entity_counts.items())
    lines += [f"Entities: {counts}.", ""]
    lines += ["| Dimension | Result |", "|---|---|"]
    for dim in DIMENSIONS:
        if dim in report.dimensions or dim in report.skipped_dimensions:
            lines.append(f"| {LABELS[dim]} | {format_cell(report, dim)} |")
    sub = _sub_values(report)
    if sub:
        lines += ["", "| Detail | Result |", "|---|---|"]
        lines += [f"| {name} | {value} |" for name, value in sub]
    lines += ["", f"## Findings ({len(report.findings)})", ""]
    if report.findings:
        lines += ["| Entity | Rule | Severity | Message |", "|---|---|---|---|"]
        for f in report.findings:
            lines.append(f"| {_md_escape(f.entity)} | {f.rule} | {f.severity} | {_md_escape(f.message)} |")
    else:
        lines.append("None.")
    return "\n".join(lines) + "\n"


def render_text(report: QualityReport) -> str:
    lines = [f"Catalog:     {report.catalog_source}",
             f"Assessed at: {report.assessed_at}",
             f"Config:      {report.config_digest}", ""]
    for dim in DIMENSIONS:
        if dim in report.dimensions or dim in report.skipped_dimensions:
            lines.append(f"{LABELS[dim]:<14}{format_cell(report, dim)}")
    for name, value in _sub_values(report):
        lines.append(f"  {name:<28}{value}")
    lines += ["", f"Findings: {len(report.findings)}"]
    for f in report.findings:
        lines.append(f"  [{f.severity}] {f.rule} {f.entity}: {f.message}")
    return "\n".join(lines) + "\n"


def render_comparison_markdown(report: ComparisonReport) -> str:
    a, b = report.sources
    lines = [f"# Catalog comparison: {a} vs {b}", "",
             "| Measure | Result |", "|---|---|",
             f"| Compatibility ({a} -> {b}) | {format_percent(report.compatibility_forward)} |",
             f"| Compatibility ({b} -> {a}) | {format_percent(report.compatibility_backward)} |",
             f"| Attribute similarity ({report.measure}) | {format_percent(report.similarity)} |",
             f"| Dataset keys | {report.key_counts[0]} / {report.key_counts[1]} ({report.shared_keys} shared) |",
             f"| Pairs (K) | {report.pairing['k']} |", ""]
    if report.pairing["pairs"]:
        lines += ["| Dataset | Paired with | Score |", "|---|---|---|"]
        for left, right, score in report.pairing["pairs"]:
            lines.append(f"| {_md_escape(left)} | {_md_escape(right)} | {score:.2f} |")
        lines.append("")
    lines.append(f"## Advisories ({len(report.advisories)})")
    lines.append("")
    for f in report.advisories:
        lines.append(f"- {f.rule} ({f.entity}): {f.message}")
    if not report.advisories:
        lines.append("None.")
    return "\n".join(lines) + "\n"


def render_comparison_text(report: ComparisonReport) -> str:
    a, b = report.sources
    lines = [f"Compatibility {a} -> {b}: {format_percent(report.compatibility_forward)}",
             f"Compatibility {b} -> {a}: {format_percent(report.compatibility_backward)}",
             f"Similarity ({report.measure}): {format_percent(report.similarity)}",
             f"Pairs: {report.pairing['k']}"]
    for left, right, score in report.pairing["pairs"]:
        lines.append(f"  {left} ~ {right}: {score:.2f}")
    for f in report.advisories:
        lines.append(f"[{f.severity}] {f.rule} {f.entity}: {f.message}")
    return "\n".join(lines) + "\n"


def render_report(report: QualityReport | ComparisonReport, format: str = "json") -> str:
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}")
    if format == "json":
        return render_json(report)
    if isinstance(report, ComparisonReport):
        return render_comparison_markdown(report) if format == "markdown" else render_comparison_text(report)
    return render_markdown(report) if format == "markdown" else render_text(report)
