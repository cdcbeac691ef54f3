"""Figures written next to the textual reports (PNG, Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .metrics.results import PERCENT_DIMENSIONS  # noqa: E402
from .render import LABELS  # noqa: E402
from .report import ComparisonReport, QualityReport  # noqa: E402

FIGSIZE = (6.4, 3.6)


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_dimensions(report: QualityReport, path: Path) -> Path:
    dims = [d for d in PERCENT_DIMENSIONS if d in report.dimensions]
    values = [report.dimensions[d].value for d in dims]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    bars = ax.barh([LABELS[d] for d in dims][::-1], values[::-1], color="#4c72b0")
    for bar, value in zip(bars, values[::-1]):
        ax.text(min(value + 1, 88), bar.get_y() + bar.get_height() / 2, f"{value:.2f}%", va="center", fontsize=8)
    ax.set_xlim(0, 100)
    ax.set_xlabel("score (%)")
    verdicts = [f"{LABELS[d]}: {'Yes' if report.dimensions[d].verdict else 'No'}"
                for d in ("scalability", "timeliness") if d in report.dimensions]
    if "readability" in report.dimensions:
        verdicts.append(f"Readability: {report.dimensions['readability'].value:.2f}")
    ax.set_title("; ".join(verdicts) if verdicts else report.catalog_source, fontsize=9)
    return _save(fig, path)


def plot_scalability(report: QualityReport, path: Path) -> Path | None:
    samples = report.scalability_samples
    if not samples:
        return None
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ns = [s.n_records for s in samples]
    per = [float(s.per_record) / 1000 for s in samples]
    ax.plot(ns, per, marker="o", color="#4c72b0", label="per-record time")
    limit = report.dimensions["scalability"].extra["ratio_limit"] * per[0]
    ax.axhline(limit, color="#c44e52", linestyle="--", linewidth=1, label="ratio limit")
    ax.set_xscale("log")
    ax.set_xlabel("datasets (N)")
    ax.set_ylabel("time per record (µs)")
    ax.set_ylim(bottom=0)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_pairing(report: ComparisonReport, path: Path) -> Path:
    scores = [p[2] for p in report.pairing["pairs"]]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.bar(range(1, len(scores) + 1), scores, color="#55a868")
    ax.axhline(report.similarity / 100, color="#c44e52", linestyle="--", linewidth=1, label="mean")
    ax.set_ylim(0, 1)
    ax.set_xlabel("pair")
    ax.set_ylabel(f"{report.measure} similarity")
    ax.legend(fontsize=8)
    return _save(fig, path)


def write_figures(report: QualityReport | ComparisonReport, out_dir: str | Path, stem: str) -> list[Path]:
    out_dir = Path(out_dir)
    if isinstance(report, ComparisonReport):
        return [plot_pairing(report, out_dir / f"{stem}_pairs.png")]
    written = [plot_dimensions(report, out_dir / f"{stem}_dimensions.png")]
    scal = plot_scalability(report, out_dir / f"{stem}_scalability.png")
    if scal is not None:
        written.append(scal)
    return written
