"""Report bundle assembly, table emission (CSV/JSON) and static SVG charts."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Optional
from xml.sax.saxutils import escape

from .domain import INDICATORS, Dataset, ScholarRecord, WeightTable
from .indices import ScholarIndices, scholar_index_table
from .scoring import IndicatorBreakdown, Totals, grand_totals, indicator_breakdown, social_citation_score, yearly_trends
from .stats import CorrelationReport, VariableSeries, correlation_matrix, round_half_away

SCHOLAR_LABELS = ("scholarly citations", "social citation", "h-index", "alt-index", "publications")
SCHOLAR_VARIABLE_KEYS = ("scholarly_citations", "social_citations", "h_index", "alt_index", "publications")
PAPER_INDICATOR_ORDER = (
    "twitter_mention", "facebook_mention", "google_plus_mention", "blog_mention", "wiki_mention",
    "facebook_share", "facebook_like", "twitter_retweet", "google_plus_one_plus", "twitter_favorite",
    "citeulike_bookmark", "mendeley_reader",
)

FORMATS = ("csv", "json")


def natural_key(text: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", text)]


@dataclass(frozen=True)
class Summary:
    scholars: int
    publications: int
    total_events: int
    scholarly_citations: int
    social_citations: Fraction
    social_excess_pct: Optional[Fraction]
    scholar_listwise_n: int
    paper_listwise_n: int
    scholar_listwise_dropped: tuple[str, ...]
    equal_tolerance: Fraction
    equal_score_publications: int


@dataclass(frozen=True)
class IndexRow:
    label: str
    scholar: ScholarRecord
    indices: ScholarIndices
    totals: Totals


@dataclass(frozen=True)
class ReportBundle:
    summary: Summary
    index_table: tuple[IndexRow, ...]
    trend_table: dict[int, Totals]
    breakdown: IndicatorBreakdown
    scholar_correlations: CorrelationReport
    paper_correlations: CorrelationReport


def excess_percentage(social: Fraction, scholarly: int) -> Optional[Fraction]:
    """Percent by which social citations exceed scholarly ones; None if undefined."""
    if scholarly == 0:
        return Fraction(0) if social == 0 else None
    return 100 * (Fraction(social) - scholarly) / scholarly


def scholar_series(ds: Dataset, w: WeightTable) -> tuple[list[VariableSeries], list[str]]:
    scholars = sorted(ds.scholars, key=lambda s: natural_key(s.scholar_id))
    indices = {row.scholar_id: row for row in scholar_index_table(ds, w)}
    grouped = ds.publications_by_scholar()
    columns = {key: [] for key in SCHOLAR_VARIABLE_KEYS}
    for sch in scholars:
        pubs = grouped[sch.scholar_id]
        values = {
            "scholarly_citations": sum(p.scholarly_citations for p in pubs),
            "social_citations": float(sum((social_citation_score(p, w) for p in pubs), Fraction(0))),
            "h_index": indices[sch.scholar_id].h_index,
            "alt_index": indices[sch.scholar_id].alt_index,
            "publications": len(pubs),
        }
        for key in SCHOLAR_VARIABLE_KEYS:
            columns[key].append(None if key in sch.missing_variables else values[key])
    series = [VariableSeries(label, columns[key]) for key, label in zip(SCHOLAR_VARIABLE_KEYS, SCHOLAR_LABELS)]
    return series, [s.scholar_id for s in scholars]


def paper_series(ds: Dataset, w: WeightTable) -> tuple[list[VariableSeries], list[str]]:
    pubs = sorted(ds.publications, key=lambda p: natural_key(p.pub_id))
    series = []
    for name in PAPER_INDICATOR_ORDER:
        kind = next(k for k in INDICATORS if k.value == name)
        series.append(VariableSeries(kind.label, [p.counts[kind] for p in pubs]))
    series.append(VariableSeries("Scholarly citations", [p.scholarly_citations for p in pubs]))
    series.append(VariableSeries("Social citations", [float(social_citation_score(p, w)) for p in pubs]))
    return series, [p.pub_id for p in pubs]


def build_bundle(ds: Dataset, w: WeightTable, equal_tolerance: Fraction | int | str = 0) -> ReportBundle:
    tolerance = Fraction(equal_tolerance)
    totals = grand_totals(ds, w)
    grouped = ds.publications_by_scholar()
    scholars = sorted(ds.scholars, key=lambda s: natural_key(s.scholar_id))
    indices = {row.scholar_id: row for row in scholar_index_table(ds, w)}
    rows = []
    for i, sch in enumerate(scholars, 1):
        pubs = grouped[sch.scholar_id]
        sch_totals = Totals(len(pubs), sum(p.scholarly_citations for p in pubs),
                            sum((social_citation_score(p, w) for p in pubs), Fraction(0)))
        rows.append(IndexRow(f"R{i}", sch, indices[sch.scholar_id], sch_totals))

    s_series, s_ids = scholar_series(ds, w)
    p_series, p_ids = paper_series(ds, w)
    scholar_corr = correlation_matrix(s_series, s_ids)
    paper_corr = correlation_matrix(p_series, p_ids)
    equal = sum(1 for p in ds.publications
                if abs(social_citation_score(p, w) - p.scholarly_citations) <= tolerance)

    summary = Summary(
        scholars=len(ds.scholars),
        publications=totals.publication_count,
        total_events=ds.total_events,
        scholarly_citations=totals.scholarly_citation_sum,
        social_citations=totals.social_citation_sum,
        social_excess_pct=excess_percentage(totals.social_citation_sum, totals.scholarly_citation_sum),
        scholar_listwise_n=scholar_corr.n,
        paper_listwise_n=paper_corr.n,
        scholar_listwise_dropped=scholar_corr.dropped,
        equal_tolerance=tolerance,
        equal_score_publications=equal,
    )
    return ReportBundle(summary, tuple(rows), yearly_trends(ds, w), indicator_breakdown(ds, w),
                        scholar_corr, paper_corr)


# -- number formatting --------------------------------------------------------

def _round(value, places: int) -> Decimal:
    """Round half away from zero; fractions are rounded exactly."""
    if isinstance(value, Fraction):
        whole, rem = divmod(abs(value) * 10 ** places, 1)
        digits = int(whole) + (rem >= Fraction(1, 2))
        result = Decimal(digits).scaleb(-places)
        return -result if value < 0 and digits else result
    return round_half_away(value, places)


def fmt_fixed(value, places: int) -> str:
    rounded = _round(value, places)
    if rounded == 0:
        rounded = abs(rounded)  # no "-0.000"
    return f"{rounded:.{places}f}"


def fmt_amount(value: Fraction) -> str:
    """Exact decimal for terminating fractions (at least one decimal), else 6 places."""
    value = Fraction(value)
    den = value.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return fmt_fixed(value, 6)
    text = format(Decimal(value.numerator) / Decimal(value.denominator), "f")
    if "." not in text:
        text += ".0"
    return text


def _opt(value, fmt) -> str:
    return "" if value is None else fmt(value)


# -- tables ---------------------------------------------------------------------

def _summary_rows(s: Summary) -> list[tuple[str, str]]:
    return [
        ("scholars", str(s.scholars)),
        ("publications", str(s.publications)),
        ("total_events", str(s.total_events)),
        ("scholarly_citations", str(s.scholarly_citations)),
        ("social_citations", fmt_amount(s.social_citations)),
        ("social_excess_pct", _opt(s.social_excess_pct, lambda v: fmt_fixed(v, 1)) or "NA"),
        ("scholar_listwise_n", str(s.scholar_listwise_n)),
        ("paper_listwise_n", str(s.paper_listwise_n)),
        ("scholar_listwise_dropped", ";".join(s.scholar_listwise_dropped)),
        ("equal_tolerance", fmt_amount(s.equal_tolerance)),
        ("equal_score_publications", str(s.equal_score_publications)),
    ]


def summary_block(bundle: ReportBundle) -> str:
    return "".join(f"{k}={v}\n" for k, v in _summary_rows(bundle.summary))


def _correlation_rows(rep: CorrelationReport) -> list[list[str]]:
    if rep.n == 0:
        return []
    rows = []
    k = len(rep.labels)
    for i in range(k):
        for j in range(i + 1, k):
            rows.append([
                rep.labels[i], rep.labels[j], str(rep.n),
                _opt(rep.rho[i][j], lambda v: fmt_fixed(v, 3)),
                _opt(rep.p_value[i][j], lambda v: fmt_fixed(v, 6)),
                rep.stars[i][j],
            ])
    return rows


def _tables_csv(bundle: ReportBundle) -> dict[str, tuple[list[str], list[list[str]]]]:
    b = bundle
    breakdown = [] if b.breakdown.empty else [
        [k.value, k.label, fmt_amount(b.breakdown.weighted_totals[k]), fmt_fixed(b.breakdown.shares[k], 3)]
        for k in INDICATORS
    ]
    corr_header = ["row", "column", "n", "rho", "p_value", "stars"]
    return {
        "summary": (["metric", "value"], [list(r) for r in _summary_rows(b.summary)]),
        "indices": (["scholar_id", "label", "publications", "h_index", "alt_index"], [
            [r.scholar.scholar_id, r.label, str(r.indices.publication_count),
             str(r.indices.h_index), str(r.indices.alt_index)]
            for r in b.index_table
        ]),
        "trends": (["year", "publications", "scholarly_citations", "social_citations"], [
            [str(y), str(t.publication_count), str(t.scholarly_citation_sum), fmt_amount(t.social_citation_sum)]
            for y, t in sorted(b.trend_table.items())
        ]),
        "breakdown": (["indicator", "label", "weighted_total", "share_pct"], breakdown),
        "correlations_scholar": (corr_header, _correlation_rows(b.scholar_correlations)),
        "correlations_paper": (corr_header, _correlation_rows(b.paper_correlations)),
    }


def _num(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else float(value)
    return value


def _correlation_json(rep: CorrelationReport) -> dict:
    return {
        "labels": list(rep.labels),
        "n": rep.n,
        "dropped": list(rep.dropped),
        "rho": [list(r) for r in rep.rho],
        "p_value": [list(r) for r in rep.p_value],
        "stars": [list(r) for r in rep.stars],
    }


def _tables_json(bundle: ReportBundle) -> dict[str, object]:
    b, s = bundle, bundle.summary
    return {
        "summary": {
            "scholars": s.scholars,
            "publications": s.publications,
            "total_events": s.total_events,
            "scholarly_citations": s.scholarly_citations,
            "social_citations": _num(s.social_citations),
            "social_excess_pct": None if s.social_excess_pct is None else float(_round(s.social_excess_pct, 1)),
            "scholar_listwise_n": s.scholar_listwise_n,
            "paper_listwise_n": s.paper_listwise_n,
            "scholar_listwise_dropped": list(s.scholar_listwise_dropped),
            "equal_tolerance": _num(s.equal_tolerance),
            "equal_score_publications": s.equal_score_publications,
        },
        "indices": [
            {"scholar_id": r.scholar.scholar_id, "label": r.label,
             "publications": r.indices.publication_count,
             "h_index": r.indices.h_index, "alt_index": r.indices.alt_index}
            for r in b.index_table
        ],
        "trends": [
            {"year": y, "publications": t.publication_count,
             "scholarly_citations": t.scholarly_citation_sum,
             "social_citations": _num(t.social_citation_sum)}
            for y, t in sorted(b.trend_table.items())
        ],
        "breakdown": {
            "empty": b.breakdown.empty,
            "rows": [] if b.breakdown.empty else [
                {"indicator": k.value, "label": k.label,
                 "weighted_total": _num(b.breakdown.weighted_totals[k]),
                 "share_pct": _num(b.breakdown.shares[k])}
                for k in INDICATORS
            ],
        },
        "correlations_scholar": _correlation_json(b.scholar_correlations),
        "correlations_paper": _correlation_json(b.paper_correlations),
    }


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write(path: Path, text: str) -> Path:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from None
    return path


def emit_tables(bundle: ReportBundle, out_dir, fmt: str = "csv") -> list[Path]:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format: {fmt}")
    out_dir = Path(out_dir)
    written = []
    if fmt == "csv":
        for name, (header, rows) in _tables_csv(bundle).items():
            written.append(_write(out_dir / f"{name}.csv", _csv_text(header, rows)))
    else:
        for name, payload in _tables_json(bundle).items():
            text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
            written.append(_write(out_dir / f"{name}.json", text))
    return written


# -- charts ---------------------------------------------------------------------

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 90, 40, 60, 80

# Fixed palette in canonical indicator order.
INDICATOR_COLORS = dict(zip(INDICATORS, (
    "#1f77b4", "#aec7e8", "#17becf", "#ff7f0e", "#ffbb78", "#d62728",
    "#2ca02c", "#98df8a", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
)))
SERIES_COLORS = {"publications": "#1f77b4", "scholarly_citations": "#ff7f0e", "social_citations": "#2ca02c"}
INDEX_COLORS = {"h_index": "#1f77b4", "alt_index": "#d62728"}


def _f(x: float) -> str:
    return f"{x:.2f}"


def _svg_open(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.2f}" y="30.00" text-anchor="middle" font-size="18">{escape(title)}</text>',
    ]


def _nice_max(value: float) -> float:
    if value <= 0:
        return 1.0
    magnitude = 10 ** (len(str(int(value))) - 1)
    for step in (1, 2, 2.5, 5, 10):
        if step * magnitude >= value:
            return float(step * magnitude)
    return float(10 * magnitude)


def _y_axis(lines: list[str], top: float, bottom: float, left: float, right: float, ymax: float) -> None:
    for i in range(6):
        v = ymax * i / 5
        y = bottom - (bottom - top) * i / 5
        lines.append(f'<line x1="{_f(left)}" y1="{_f(y)}" x2="{_f(right)}" y2="{_f(y)}" stroke="#e0e0e0"/>')
        label = f"{v:g}"
        lines.append(f'<text x="{_f(left - 8)}" y="{_f(y + 4)}" text-anchor="end" font-size="12">{label}</text>')
    lines.append(f'<line x1="{_f(left)}" y1="{_f(top)}" x2="{_f(left)}" y2="{_f(bottom)}" stroke="#000000"/>')
    lines.append(f'<line x1="{_f(left)}" y1="{_f(bottom)}" x2="{_f(right)}" y2="{_f(bottom)}" stroke="#000000"/>')


def _legend(lines: list[str], entries: list[tuple[str, str]], x: float, y: float) -> None:
    for i, (name, color) in enumerate(entries):
        yy = y + 18 * i
        lines.append(f'<rect x="{_f(x)}" y="{_f(yy - 10)}" width="12" height="12" fill="{color}"/>')
        lines.append(f'<text x="{_f(x + 18)}" y="{_f(yy)}" font-size="12">{escape(name)}</text>')


def trend_svg(bundle: ReportBundle) -> str:
    years = sorted(bundle.trend_table)
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT - 160
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    series = {
        "publications": [bundle.trend_table[y].publication_count for y in years],
        "scholarly_citations": [bundle.trend_table[y].scholarly_citation_sum for y in years],
        "social_citations": [float(bundle.trend_table[y].social_citation_sum) for y in years],
    }
    ymax = _nice_max(max((v for vals in series.values() for v in vals), default=0))
    lines = _svg_open("Publications, scholarly citations and social citations by year")
    _y_axis(lines, top, bottom, left, right, ymax)

    def x_at(i: int) -> float:
        if len(years) == 1:
            return (left + right) / 2
        return left + 20 + (right - left - 40) * i / (len(years) - 1)

    for i, year in enumerate(years):
        x = x_at(i)
        lines.append(f'<line class="x-tick" x1="{_f(x)}" y1="{_f(bottom)}" x2="{_f(x)}" y2="{_f(bottom + 6)}" stroke="#000000"/>')
        lines.append(f'<text x="{_f(x)}" y="{_f(bottom + 22)}" text-anchor="middle" font-size="12">{year}</text>')
    for name, values in series.items():
        pts = [(x_at(i), bottom - (bottom - top) * v / ymax) for i, v in enumerate(values)]
        color = SERIES_COLORS[name]
        if len(pts) > 1:
            path = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
            lines.append(f'<polyline data-series="{name}" points="{path}" fill="none" stroke="{color}" stroke-width="2"/>')
        for (x, y), v in zip(pts, values):
            lines.append(f'<circle data-series="{name}" cx="{_f(x)}" cy="{_f(y)}" r="4" fill="{color}"/>')
    _legend(lines, [(n.replace("_", " "), c) for n, c in SERIES_COLORS.items()], right + 20, top + 20)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def breakdown_svg(bundle: ReportBundle) -> str:
    bd = bundle.breakdown
    left, right = 160, WIDTH - MARGIN_RIGHT - 60
    top, bottom = MARGIN_TOP, HEIGHT - 40
    lines = _svg_open("Share of weighted social citations by indicator")
    if bd.empty:
        lines.append(f'<text x="{WIDTH / 2:.2f}" y="{HEIGHT / 2:.2f}" text-anchor="middle" font-size="14">no social citations</text>')
        lines.append("</svg>")
        return "\n".join(lines) + "\n"
    top_share = max(bd.shares.values())
    slot = (bottom - top) / len(INDICATORS)
    bar_h = slot * 0.7
    for i, kind in enumerate(INDICATORS):
        share = bd.shares[kind]
        width = float((right - left) * share / top_share)
        y = top + slot * i + (slot - bar_h) / 2
        lines.append(f'<text x="{_f(left - 8)}" y="{_f(y + bar_h / 2 + 4)}" text-anchor="end" font-size="12">{escape(kind.label)}</text>')
        lines.append(f'<rect data-indicator="{kind.value}" x="{_f(left)}" y="{_f(y)}" width="{_f(width)}" '
                     f'height="{_f(bar_h)}" fill="{INDICATOR_COLORS[kind]}"/>')
        lines.append(f'<text x="{_f(left + width + 6)}" y="{_f(y + bar_h / 2 + 4)}" font-size="12">{fmt_fixed(share, 1)}%</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def indices_svg(bundle: ReportBundle) -> str:
    rows = bundle.index_table
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT - 100
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    ymax = _nice_max(max((max(r.indices.h_index, r.indices.alt_index) for r in rows), default=0))
    lines = _svg_open("h-index and alt-index by scholar")
    _y_axis(lines, top, bottom, left, right, ymax)
    if rows:
        slot = (right - left) / len(rows)
        bar_w = slot * 0.4
        for i, r in enumerate(rows):
            x0 = left + slot * i + slot * 0.1
            for j, (name, value) in enumerate((("h_index", r.indices.h_index), ("alt_index", r.indices.alt_index))):
                h = (bottom - top) * value / ymax
                lines.append(f'<rect data-scholar="{r.label}" data-series="{name}" x="{_f(x0 + j * bar_w)}" '
                             f'y="{_f(bottom - h)}" width="{_f(bar_w)}" height="{_f(h)}" fill="{INDEX_COLORS[name]}"/>')
            cx = left + slot * (i + 0.5)
            lines.append(f'<text x="{_f(cx)}" y="{_f(bottom + 16)}" text-anchor="end" font-size="10" '
                         f'transform="rotate(-45 {_f(cx)} {_f(bottom + 16)})">{r.label}</text>')
    _legend(lines, [("h-index", INDEX_COLORS["h_index"]), ("alt-index", INDEX_COLORS["alt_index"])], right + 20, top + 20)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def legend_csv(bundle: ReportBundle) -> str:
    return _csv_text(["label", "scholar_id", "display_name"],
                     [[r.label, r.scholar.scholar_id, r.scholar.display_name] for r in bundle.index_table])


def emit_charts(bundle: ReportBundle, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    return [
        _write(out_dir / "trend.svg", trend_svg(bundle)),
        _write(out_dir / "breakdown.svg", breakdown_svg(bundle)),
        _write(out_dir / "indices.svg", indices_svg(bundle)),
        _write(out_dir / "legend.csv", legend_csv(bundle)),
    ]
