"""Analysis runs, gap detection, hypothesis comparison and rendering."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from .errors import ParameterError
from .hypothesis import FIGURE_LABELS, parse_hypothesis
from .metrics import SAMPLE, MetricsReport, RankDistribution, RankEntry, compute_metrics, rank_distribution

DEFAULT_GAP_THRESHOLD = 1.3
FORMATS = ("csv", "json", "svg")
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisRun:
    corpus_id: str
    hypothesis: str
    distribution: RankDistribution
    metrics: MetricsReport
    gaps: tuple[tuple[int, float], ...] = field(default=())

    @property
    def figure(self) -> str:
        return figure_label(self.hypothesis)


@dataclass(frozen=True)
class ComparisonRow:
    hypothesis: str
    figure: str
    N: int
    smoothness: float
    redundancy: float
    entropy_bits: float
    corpus_id: str = ""


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]


def figure_label(hypothesis_name: str) -> str:
    try:
        return FIGURE_LABELS[parse_hypothesis(hypothesis_name).kind]
    except ParameterError:
        return "-"


def detect_gaps(dist: RankDistribution, threshold: float = DEFAULT_GAP_THRESHOLD) -> list[tuple[int, float]]:
    """Positions n (1-based) where F(n)/F(n+1) >= threshold, with the ratio."""
    if threshold <= 1:
        raise ParameterError("gap threshold must exceed 1")
    c = dist.counts
    gaps = []
    for n in range(1, len(c)):
        ratio = c[n - 1] / c[n]
        if ratio >= threshold:
            gaps.append((n, ratio))
    return gaps


def resolved_gaps(
    base: RankDistribution, other: RankDistribution, threshold: float = DEFAULT_GAP_THRESHOLD
) -> list[tuple[str, str, float]]:
    """Gaps of ``base`` that ``other`` closes.

    A gap between adjacent symbols ``(upper, lower)`` of ``base`` counts as
    closed when both symbols also occur in ``other`` and no step between
    their ranks there reaches ``threshold``.
    """
    other_gaps = {n for n, _ in detect_gaps(other, threshold)}
    closed = []
    for n, ratio in detect_gaps(base, threshold):
        upper, lower = base.symbols[n - 1], base.symbols[n]
        try:
            a, b = other.rank_of(upper), other.rank_of(lower)
        except ValueError:
            continue
        lo, hi = min(a, b), max(a, b)
        if not any(lo <= k < hi for k in other_gaps):
            closed.append((upper, lower, ratio))
    return closed


def build_run(
    corpus_id: str,
    hypothesis: str,
    counts: Mapping[str, int],
    sd: str = SAMPLE,
    gap_threshold: float = DEFAULT_GAP_THRESHOLD,
) -> AnalysisRun:
    dist = rank_distribution(counts)
    return AnalysisRun(
        corpus_id=corpus_id,
        hypothesis=hypothesis,
        distribution=dist,
        metrics=compute_metrics(dist, sd),
        gaps=tuple(detect_gaps(dist, gap_threshold)),
    )


def compare(runs: Sequence[AnalysisRun]) -> ComparisonTable:
    return ComparisonTable(
        tuple(
            ComparisonRow(
                hypothesis=r.hypothesis,
                figure=r.figure,
                N=r.metrics.N,
                smoothness=r.metrics.smoothness,
                redundancy=r.metrics.redundancy,
                entropy_bits=r.metrics.entropy_bits,
                corpus_id=r.corpus_id,
            )
            for r in runs
        )
    )


# --- serialization -------------------------------------------------------

def _num(x: float):
    # strict JSON has no Infinity literal
    return "Infinity" if math.isinf(x) else x


def _unnum(x) -> float:
    return math.inf if x == "Infinity" else float(x)


def run_to_dict(run: AnalysisRun) -> dict:
    m = run.metrics
    return {
        "schema_version": SCHEMA_VERSION,
        "corpus_id": run.corpus_id,
        "hypothesis": run.hypothesis,
        "figure": run.figure,
        "distribution": {
            "total_count": run.distribution.total_count,
            "entries": [
                {"rank": k, "symbol": e.symbol, "count": e.count, "fraction": e.fraction}
                for k, e in enumerate(run.distribution.entries, start=1)
            ],
        },
        "metrics": {
            "N": m.N,
            "diffs": list(m.diffs),
            "smoothness": _num(m.smoothness),
            "entropy_bits": m.entropy_bits,
            "redundancy": m.redundancy,
            "sd_mode": m.sd_mode,
        },
        "gaps": [{"position": n, "ratio": r} for n, r in run.gaps],
    }


def run_from_dict(d: dict) -> AnalysisRun:
    dist = d["distribution"]
    m = d["metrics"]
    return AnalysisRun(
        corpus_id=d["corpus_id"],
        hypothesis=d["hypothesis"],
        distribution=RankDistribution(
            tuple(RankEntry(e["symbol"], e["count"], e["fraction"]) for e in dist["entries"]),
            dist["total_count"],
        ),
        metrics=MetricsReport(
            N=m["N"],
            diffs=tuple(m["diffs"]),
            smoothness=_unnum(m["smoothness"]),
            entropy_bits=m["entropy_bits"],
            redundancy=m["redundancy"],
            sd_mode=m.get("sd_mode", SAMPLE),
        ),
        gaps=tuple((g["position"], g["ratio"]) for g in d["gaps"]),
    )


def table_to_dict(table: ComparisonTable) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "rows": [
            {
                "hypothesis": r.hypothesis,
                "figure": r.figure,
                "N": r.N,
                "smoothness": _num(r.smoothness),
                "redundancy": r.redundancy,
                "entropy_bits": r.entropy_bits,
                "corpus_id": r.corpus_id,
            }
            for r in table.rows
        ],
    }


def table_from_dict(d: dict) -> ComparisonTable:
    return ComparisonTable(
        tuple(
            ComparisonRow(
                hypothesis=r["hypothesis"],
                figure=r["figure"],
                N=r["N"],
                smoothness=_unnum(r["smoothness"]),
                redundancy=r["redundancy"],
                entropy_bits=r["entropy_bits"],
                corpus_id=r.get("corpus_id", ""),
            )
            for r in d["rows"]
        )
    )


def dump_json(obj) -> bytes:
    return (json.dumps(obj, ensure_ascii=False, indent=2, allow_nan=False) + "\n").encode("utf-8")


def _csv(header: Sequence[str], rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().encode("utf-8")


def format_smoothness(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.4f}"


def _run_csv(run: AnalysisRun) -> bytes:
    return _csv(
        ["rank", "symbol", "count", "fraction"],
        ([k, e.symbol, e.count, repr(e.fraction)] for k, e in enumerate(run.distribution.entries, start=1)),
    )


def _table_csv(table: ComparisonTable) -> bytes:
    return _csv(
        ["hypothesis", "figure", "N", "smoothness", "redundancy_pct", "shannon_bits"],
        (
            [r.hypothesis, r.figure, r.N, format_smoothness(r.smoothness), f"{100 * r.redundancy:.2f}", f"{r.entropy_bits:.2f}"]
            for r in table.rows
        ),
    )


def _bar_svg(labels: Sequence[str], values: Sequence[float], title: str, ylabel: str, width: int, height: int) -> bytes:
    left, right, top, bottom = 56, 16, 32, 44
    plot_w = width - left - right
    plot_h = height - top - bottom
    if plot_w <= 0 or plot_h <= 0:
        raise ParameterError("svg size too small")
    finite = [v for v in values if math.isfinite(v)]
    vmax = max(finite) if finite and max(finite) > 0 else 1.0
    slot = plot_w / max(len(values), 1)
    bar_w = slot * 0.8
    base_y = top + plot_h
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" data-plot-height="{plot_h}" data-baseline="{base_y}" data-max="{vmax!r}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<line x1="{left}" y1="{base_y}" x2="{left + plot_w}" y2="{base_y}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{base_y}" stroke="black"/>',
    ]
    for t in range(5):
        v = vmax * t / 4
        y = base_y - plot_h * t / 4
        out.append(
            f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="10">{v:.3g}</text>'
        )
    out.append(
        f'<text x="14" y="{top + plot_h / 2:.2f}" transform="rotate(-90 14 {top + plot_h / 2:.2f})" '
        f'text-anchor="middle" font-family="sans-serif" font-size="11">{escape(ylabel)}</text>'
    )
    for k, (label, v) in enumerate(zip(labels, values), start=1):
        shown = min(v, vmax) if not math.isnan(v) else 0.0
        h = plot_h * shown / vmax
        x = left + (k - 1) * slot + (slot - bar_w) / 2
        out.append(
            f'<rect class="bar" data-rank="{k}" data-symbol="{escape(label)}" data-value="{v!r}" '
            f'x="{x:.3f}" y="{base_y - h:.3f}" width="{bar_w:.3f}" height="{h:.3f}" fill="steelblue"/>'
        )
        out.append(
            f'<text x="{x + bar_w / 2:.3f}" y="{base_y + 14}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{escape(label)}</text>'
        )
    out.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 8}" text-anchor="middle" font-family="sans-serif" font-size="11">rank</text>'
    )
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render(obj: AnalysisRun | ComparisonTable, fmt: str, width: int = 720, height: int = 400) -> bytes:
    """Serialize a run or a comparison table as csv, json or an svg bar chart."""
    if fmt == "svg-bar":
        fmt = "svg"
    if fmt not in FORMATS:
        raise ParameterError(f"unknown format {fmt!r}; choose from {FORMATS}")
    if isinstance(obj, AnalysisRun):
        if fmt == "csv":
            return _run_csv(obj)
        if fmt == "json":
            return dump_json(run_to_dict(obj))
        title = f"{obj.corpus_id}: {obj.hypothesis} ({obj.figure})"
        return _bar_svg(obj.distribution.symbols, obj.distribution.fractions, title, "fractional frequency", width, height)
    if isinstance(obj, ComparisonTable):
        if fmt == "csv":
            return _table_csv(obj)
        if fmt == "json":
            return dump_json(table_to_dict(obj))
        return _bar_svg(
            [r.hypothesis for r in obj.rows], [r.smoothness for r in obj.rows], "smoothness by hypothesis", "smoothness", width, height
        )
    raise ParameterError(f"cannot render {type(obj).__name__}")
